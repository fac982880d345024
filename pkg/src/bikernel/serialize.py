"""JSON documents for presentations, displayed presentations, categories and bundles.

Composite keys are token lists joined by ``;``. Readers reject unknown keys and
name the offending key path in every ``SchemaError``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import TABLES, BicatPresentation, Inv2Cell, make_presentation
from .display import DispBicatPresentation, pair, validate_disp
from .errors import SchemaError
from .fincat import FiniteCategory, Functor, NatTrans, check_category
from .psfun import BiequivalenceData, ModificationData, PseudofunctorData, PstransData

ARITY = {"id1": 1, "comp1": 2, "id2": 1, "vcomp": 2, "lwhisker": 2, "rwhisker": 2,
         "lunitor": 1, "lunitor_inv": 1, "runitor": 1, "runitor_inv": 1,
         "lassoc": 3, "lassoc_inv": 3}
# argument tiers of each table: o object, 1 one-cell, 2 two-cell
TIERS = {"id1": "o", "comp1": "11", "id2": "1", "vcomp": "22", "lwhisker": "12",
         "rwhisker": "21", "lunitor": "1", "lunitor_inv": "1", "runitor": "1",
         "runitor_inv": "1", "lassoc": "111", "lassoc_inv": "111"}
RESULT = {"id1": "1", "comp1": "1"}


def join(key) -> str:
    parts = key if isinstance(key, tuple) else (key,)
    if any(";" in x for x in parts):
        raise SchemaError(f"token in {parts!r} contains ';' and cannot be written")
    return ";".join(parts)


def split(key: str, arity: int, path: str):
    parts = key.split(";")
    if len(parts) != arity:
        raise SchemaError(f"{path}: key {key!r} needs {arity} ';'-separated tokens")
    return tuple(parts) if arity > 1 else parts[0]


# ---------------------------------------------------------------- generic shape checks

def _obj(doc, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{path or '<root>'}: expected an object")
    unknown = set(doc) - required - set(optional)
    if unknown:
        raise SchemaError(f"{path}.{sorted(unknown)[0]}: unknown key".lstrip("."))
    missing = required - set(doc)
    if missing:
        raise SchemaError(f"{path}.{sorted(missing)[0]}: missing key".lstrip("."))
    return doc


def _str(x, path: str) -> str:
    if not isinstance(x, str):
        raise SchemaError(f"{path}: expected a string token")
    return x


def _strlist(x, path: str) -> list[str]:
    if not isinstance(x, list):
        raise SchemaError(f"{path}: expected a list of tokens")
    return [_str(v, f"{path}[{i}]") for i, v in enumerate(x)]


def _strmap(x, path: str, arity: int = 1) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"{path}: expected an object")
    return {split(k, arity, path): _str(v, f"{path}.{k}") for k, v in x.items()}


def _endpoints(x, path: str) -> dict[str, tuple[str, str]]:
    if not isinstance(x, dict):
        raise SchemaError(f"{path}: expected an object")
    out = {}
    for tok, v in x.items():
        e = _obj(v, f"{path}.{tok}", {"src", "tgt"})
        out[tok] = (_str(e["src"], f"{path}.{tok}.src"), _str(e["tgt"], f"{path}.{tok}.tgt"))
    return out


def load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- presentations

def presentation_to_json(p: BicatPresentation) -> dict:
    out: dict[str, Any] = {
        "objects": list(p.objects),
        "one_cells": {f: {"src": a, "tgt": b} for f, (a, b) in sorted(p.one_cells.items())},
        "two_cells": {t: {"src": f, "tgt": g} for t, (f, g) in sorted(p.two_cells.items())},
    }
    for name in TABLES:
        out[name] = {join(k): v for k, v in sorted(getattr(p, name).items())}
    return out


def presentation_from_json(doc, path: str = "") -> BicatPresentation:
    _obj(doc, path, {"objects", "one_cells", "two_cells"}, set(TABLES))
    at = (lambda k: f"{path}.{k}" if path else k)
    tables = {name: _strmap(doc.get(name, {}), at(name), ARITY[name]) for name in TABLES}
    return make_presentation(_strlist(doc["objects"], at("objects")),
                             _endpoints(doc["one_cells"], at("one_cells")),
                             _endpoints(doc["two_cells"], at("two_cells")), **tables)


def read_presentation(path: str | Path) -> BicatPresentation:
    return presentation_from_json(load(path))


# ---------------------------------------------------------------- displayed presentations

def _pairs_key(parts: tuple[tuple[str, str], ...]) -> str:
    return ";".join(x for pr in parts for x in pr)


def disp_to_json(d: DispBicatPresentation, base: Any = None) -> dict:
    """Fiber form: total tokens are rebuilt as ``base|disp`` on reading."""
    over = {"o": d.over0, "1": d.over1, "2": d.over2}
    out: dict[str, Any] = {
        "base": presentation_to_json(d.base) if base is None else base,
        "d0": {a: list(xs) for a, xs in d.d0.items()},
        "d1": {join(k): list(v) for k, v in sorted(d.d1.items())},
        "d2": {join(k): list(v) for k, v in sorted(d.d2.items())},
    }
    for name in TABLES:
        table = {}
        res = RESULT.get(name, "2")
        for key, val in getattr(d.total, name).items():
            parts = key if isinstance(key, tuple) else (key,)
            k = _pairs_key(tuple(over[t][x] for x, t in zip(parts, TIERS[name])))
            table[k] = over[res][val][1]
        out[name] = dict(sorted(table.items()))
    return out


def disp_from_json(doc, base_dir: str | Path = ".", path: str = "",
                   bases: dict[str, BicatPresentation] | None = None) -> DispBicatPresentation:
    _obj(doc, path, {"base", "d0", "d1", "d2"}, set(TABLES))
    at = (lambda k: f"{path}.{k}" if path else k)
    raw = doc["base"]
    if isinstance(raw, str):
        if bases is not None and raw in bases:
            B = bases[raw]
        else:
            B = presentation_from_json(load(Path(base_dir) / raw), at("base"))
    else:
        B = presentation_from_json(raw, at("base"))
    d0 = doc["d0"]
    if not isinstance(d0, dict):
        raise SchemaError(f"{at('d0')}: expected an object")
    objects, over0 = [], {}
    for a, xs in d0.items():
        for x in _strlist(xs, f"{at('d0')}.{a}"):
            X = pair(a, x)
            objects.append(X)
            over0[X] = (a, x)
    one, over1, two, over2 = {}, {}, {}, {}
    for tier, name, arity, cells, over in (("1", "d1", 3, one, over1), ("2", "d2", 3, two, over2)):
        raw_fib = doc[name]
        if not isinstance(raw_fib, dict):
            raise SchemaError(f"{at(name)}: expected an object")
        for k, toks in raw_fib.items():
            c, x, y = split(k, arity, at(name))
            for tok in _strlist(toks, f"{at(name)}.{k}"):
                T = pair(c, tok)
                if T in cells:
                    raise SchemaError(f"{at(name)}.{k}: token {tok!r} repeats over {c!r}")
                if tier == "1":
                    cells[T] = (pair(B.src1(c) if c in B.one_cells else "?", x),
                                pair(B.tgt1(c) if c in B.one_cells else "?", y))
                else:
                    f, g = B.two_cells.get(c, ("?", "?"))
                    cells[T] = (pair(f, x), pair(g, y))
                over[T] = (c, tok)
    tables = {}
    for name in TABLES:
        raw_t = doc.get(name, {})
        if not isinstance(raw_t, dict):
            raise SchemaError(f"{at(name)}: expected an object")
        n = ARITY[name]
        res = RESULT.get(name, "2")
        tab = {}
        for k, v in raw_t.items():
            parts = split(k, 2 * n, at(name))
            parts = parts if isinstance(parts, tuple) else (parts,)
            toks = tuple(pair(parts[2 * i], parts[2 * i + 1]) for i in range(n))
            key = toks if n > 1 else toks[0]
            base_val = getattr(B, name).get(tuple(parts[0::2]) if n > 1 else parts[0])
            if base_val is None:
                raise SchemaError(f"{at(name)}.{k}: no base entry to lie over")
            tab[key] = pair(base_val, _str(v, f"{at(name)}.{k}"))
        tables[name] = tab
    total = make_presentation(objects, one, two, **tables)
    d = DispBicatPresentation(B, total, over0, over1, over2)
    validate_disp(d)
    return d


def read_disp(path: str | Path) -> DispBicatPresentation:
    p = Path(path)
    return disp_from_json(load(p), p.parent)


def canonical_renaming(d: DispBicatPresentation) -> dict[str, dict[str, str]]:
    """Total tokens -> ``base|disp`` tokens, per tier."""
    return {"o": {X: pair(*v) for X, v in d.over0.items()},
            "1": {F: pair(*v) for F, v in d.over1.items()},
            "2": {S: pair(*v) for S, v in d.over2.items()}}


# ---------------------------------------------------------------- finite categories

def category_to_json(C: FiniteCategory) -> dict:
    return {"name": C.name, "objects": list(C.objects),
            "morphisms": {m: {"src": a, "tgt": b} for m, (a, b) in sorted(C.morphisms.items())},
            "ident": dict(C.ident), "comp": {join(k): v for k, v in sorted(C.comp.items())}}


def category_from_json(doc, path: str = "") -> FiniteCategory:
    _obj(doc, path, {"name", "objects", "morphisms", "ident", "comp"})
    at = (lambda k: f"{path}.{k}" if path else k)
    C = FiniteCategory(_str(doc["name"], at("name")), tuple(_strlist(doc["objects"], at("objects"))),
                       _endpoints(doc["morphisms"], at("morphisms")),
                       _strmap(doc["ident"], at("ident")), _strmap(doc["comp"], at("comp"), 2))
    try:
        return check_category(C)
    except Exception as e:
        raise SchemaError(f"{path or '<root>'}: {e}") from None


def categories_from_json(doc, path: str = "categories") -> list[FiniteCategory]:
    if isinstance(doc, dict) and "categories" in doc:
        _obj(doc, "", {"categories"})
        doc = doc["categories"]
    if not isinstance(doc, list):
        raise SchemaError(f"{path}: expected a list of categories")
    return [category_from_json(c, f"{path}[{i}]") for i, c in enumerate(doc)]


def functor_to_json(F: Functor) -> dict:
    return {"objects": dict(F.obj), "morphisms": dict(F.mor)}


def functor_from_json(doc, src: FiniteCategory, tgt: FiniteCategory, path: str) -> Functor:
    _obj(doc, path, {"objects", "morphisms"})
    return Functor(src, tgt, _strmap(doc["objects"], f"{path}.objects"),
                   _strmap(doc["morphisms"], f"{path}.morphisms"))


def nattrans_to_json(n: NatTrans) -> dict:
    return {"components": dict(n.comp)}


def nattrans_from_json(doc, F: Functor, G: Functor, path: str) -> NatTrans:
    _obj(doc, path, {"components"})
    return NatTrans(F, G, _strmap(doc["components"], f"{path}.components"))


# ---------------------------------------------------------------- presheaves and CwF data

def presheaf_to_json(T) -> dict:
    return {"sets": {a: list(xs) for a, xs in T.sets.items()},
            "action": {m: dict(fn) for m, fn in sorted(T.act.items())}}


def presheaf_from_json(doc, C: FiniteCategory, path: str):
    from .catinst import Presheaf, presheaf_problems

    _obj(doc, path, {"sets", "action"})
    sets = doc["sets"]
    if not isinstance(sets, dict):
        raise SchemaError(f"{path}.sets: expected an object")
    act = doc["action"]
    if not isinstance(act, dict):
        raise SchemaError(f"{path}.action: expected an object")
    T = Presheaf(C, {a: tuple(_strlist(xs, f"{path}.sets.{a}")) for a, xs in sets.items()},
                 {m: _strmap(fn, f"{path}.action.{m}") for m, fn in act.items()})
    if set(T.sets) != set(C.objects):
        raise SchemaError(f"{path}.sets: must list exactly the objects of the category")
    probs = presheaf_problems(T)
    if probs:
        raise SchemaError(f"{path}: {probs[0]}")
    return T


def cwf_from_json(doc, path: str = ""):
    """``{category, Ty, Tm, p}`` with p[a][term] = type."""
    _obj(doc, path, {"category", "Ty", "Tm", "p"})
    at = (lambda k: f"{path}.{k}" if path else k)
    C = category_from_json(doc["category"], at("category"))
    Ty = presheaf_from_json(doc["Ty"], C, at("Ty"))
    Tm = presheaf_from_json(doc["Tm"], C, at("Tm"))
    p = doc["p"]
    if not isinstance(p, dict):
        raise SchemaError(f"{at('p')}: expected an object")
    return C, Ty, Tm, {a: _strmap(m, f"{at('p')}.{a}") for a, m in p.items()}


def kleisli_to_json(K) -> dict:
    return {"M": dict(K.M), "eta": dict(K.eta),
            "star": {join(k): v for k, v in sorted(K.star.items())}}


# ---------------------------------------------------------------- Cat-valued pseudofunctors

def cat_psfunctor_from_json(doc, B: BicatPresentation, path: str = ""):
    from .yoneda import CatValuedPsfunctor, _op

    _obj(doc, path, {"cats", "fun", "nat", "identitor", "compositor"})
    at = (lambda k: f"{path}.{k}" if path else k)
    Bo = _op(B)
    raw = doc["cats"]
    if not isinstance(raw, dict) or set(raw) != set(B.objects):
        raise SchemaError(f"{at('cats')}: needs one category per object")
    cats = {b: category_from_json(raw[b], f"{at('cats')}.{b}") for b in B.objects}

    def need(name: str, keys) -> dict:
        m = doc[name]
        if not isinstance(m, dict):
            raise SchemaError(f"{at(name)}: expected an object")
        for k in keys:
            if k not in m:
                raise SchemaError(f"{at(name)}.{k}: missing key")
        return m

    fun_doc = need("fun", Bo.one_cells)
    fun = {f: functor_from_json(fun_doc[f], cats[a], cats[b], f"{at('fun')}.{f}")
           for f, (a, b) in Bo.one_cells.items()}
    nat_doc = need("nat", Bo.two_cells)
    nat = {t: nattrans_from_json(nat_doc[t], fun[f], fun[g], f"{at('nat')}.{t}")
           for t, (f, g) in Bo.two_cells.items()}
    from .fincat import compose_functors, identity_functor

    id_doc = need("identitor", Bo.objects)
    ident = {a: nattrans_from_json(id_doc[a], identity_functor(cats[a]), fun[Bo.id1[a]],
                                   f"{at('identitor')}.{a}") for a in Bo.objects}
    comp_doc = need("compositor", [join(k) for k in Bo.comp1])
    comp = {(f, g): nattrans_from_json(comp_doc[join((f, g))],
                                       compose_functors(fun[f], fun[g]), fun[h],
                                       f"{at('compositor')}.{f};{g}")
            for (f, g), h in Bo.comp1.items()}
    return CatValuedPsfunctor(B, cats, fun, nat, ident, comp)


def cat_psfunctor_to_json(P) -> dict:
    return {"cats": {b: category_to_json(C) for b, C in P.cats.items()},
            "fun": {f: functor_to_json(F) for f, F in P.fun.items()},
            "nat": {t: nattrans_to_json(n) for t, n in P.nat.items()},
            "identitor": {a: nattrans_to_json(n) for a, n in P.identitor.items()},
            "compositor": {join(k): nattrans_to_json(n) for k, n in P.compositor.items()}}


# ---------------------------------------------------------------- pseudofunctor-level data

class _Names:
    """Shared presentations of a bundle, referred to by name."""

    def __init__(self):
        self.pres: dict[str, BicatPresentation] = {}
        self.disp: dict[str, DispBicatPresentation] = {}

    def pres_name(self, p: BicatPresentation) -> str:
        for k, q in self.pres.items():
            if q is p or q == p:
                return k
        k = f"P{len(self.pres)}"
        self.pres[k] = p
        return k

    def disp_name(self, d: DispBicatPresentation) -> str:
        for k, e in self.disp.items():
            if e is d:
                return k
        k = f"D{len(self.disp)}"
        self.disp[k] = d
        return k


def psfunctor_to_json(F: PseudofunctorData, names: _Names) -> dict:
    return {"src": names.pres_name(F.src), "tgt": names.pres_name(F.tgt),
            "F0": dict(F.F0), "F1": dict(F.F1), "F2": dict(F.F2),
            "identitor": dict(F.identitor),
            "compositor": {join(k): v for k, v in F.compositor.items()}}


def psfunctor_from_json(doc, pres: dict[str, BicatPresentation], path: str) -> PseudofunctorData:
    _obj(doc, path, {"src", "tgt", "F0", "F1", "F2", "identitor", "compositor"})

    def ref(k):
        name = _str(doc[k], f"{path}.{k}")
        if name not in pres:
            raise SchemaError(f"{path}.{k}: unknown presentation {name!r}")
        return pres[name]

    return PseudofunctorData(ref("src"), ref("tgt"), _strmap(doc["F0"], f"{path}.F0"),
                             _strmap(doc["F1"], f"{path}.F1"), _strmap(doc["F2"], f"{path}.F2"),
                             _strmap(doc["identitor"], f"{path}.identitor"),
                             _strmap(doc["compositor"], f"{path}.compositor", 2))


def _inv_to_json(c: Inv2Cell) -> dict:
    return {"theta": c.theta, "theta_inv": c.theta_inv}


def _invmap_from_json(doc, path: str) -> dict[str, Inv2Cell]:
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected an object")
    out = {}
    for k, v in doc.items():
        _obj(v, f"{path}.{k}", {"theta", "theta_inv"})
        out[k] = Inv2Cell(_str(v["theta"], f"{path}.{k}.theta"),
                          _str(v["theta_inv"], f"{path}.{k}.theta_inv"))
    return out


def pstrans_to_json(t: PstransData, names: _Names) -> dict:
    return {"src": psfunctor_to_json(t.src, names), "tgt": psfunctor_to_json(t.tgt, names),
            "eta0": dict(t.eta0), "eta1": {f: _inv_to_json(c) for f, c in t.eta1.items()}}


def pstrans_from_json(doc, pres, path: str) -> PstransData:
    _obj(doc, path, {"src", "tgt", "eta0", "eta1"})
    return PstransData(psfunctor_from_json(doc["src"], pres, f"{path}.src"),
                       psfunctor_from_json(doc["tgt"], pres, f"{path}.tgt"),
                       _strmap(doc["eta0"], f"{path}.eta0"),
                       _invmap_from_json(doc["eta1"], f"{path}.eta1"))


def modification_to_json(m: ModificationData, names: _Names) -> dict:
    return {"src": pstrans_to_json(m.src, names), "tgt": pstrans_to_json(m.tgt, names),
            "gamma": dict(m.gamma)}


def modification_from_json(doc, pres, path: str) -> ModificationData:
    _obj(doc, path, {"src", "tgt", "gamma"})
    return ModificationData(pstrans_from_json(doc["src"], pres, f"{path}.src"),
                            pstrans_from_json(doc["tgt"], pres, f"{path}.tgt"),
                            _strmap(doc["gamma"], f"{path}.gamma"))


BIEQ_PSF = ("L", "R")
BIEQ_TRANS = ("eta", "eta_i", "eps", "eps_i")
BIEQ_MODS = ("m1", "m2", "m3", "m4")


def biequivalence_to_json(b: BiequivalenceData, names: _Names) -> dict:
    out = {k: psfunctor_to_json(getattr(b, k), names) for k in BIEQ_PSF}
    out.update({k: pstrans_to_json(getattr(b, k), names) for k in BIEQ_TRANS})
    out.update({k: modification_to_json(getattr(b, k), names) for k in BIEQ_MODS})
    return out


def biequivalence_from_json(doc, pres, path: str) -> BiequivalenceData:
    _obj(doc, path, set(BIEQ_PSF + BIEQ_TRANS + BIEQ_MODS))
    at = (lambda k: f"{path}.{k}" if path else k)
    parts: dict[str, Any] = {k: psfunctor_from_json(doc[k], pres, at(k)) for k in BIEQ_PSF}
    parts.update({k: pstrans_from_json(doc[k], pres, at(k)) for k in BIEQ_TRANS})
    parts.update({k: modification_from_json(doc[k], pres, at(k)) for k in BIEQ_MODS})
    return BiequivalenceData(**parts)


# ---------------------------------------------------------------- displayed biequivalence bundles

def _disp_psf_to_json(dF, names: _Names, ren) -> dict:
    s, t = ren[id(dF.src)], ren[id(dF.tgt)]
    return {"base": psfunctor_to_json(dF.base, names),
            "src": names.disp_name(dF.src), "tgt": names.disp_name(dF.tgt),
            "F0": {s["o"][k]: t["o"][v] for k, v in dF.F0.items()},
            "F1": {s["1"][k]: t["1"][v] for k, v in dF.F1.items()},
            "F2": {s["2"][k]: t["2"][v] for k, v in dF.F2.items()},
            "identitor": {s["o"][k]: t["2"][v] for k, v in dF.identitor.items()},
            "compositor": {join((s["1"][f], s["1"][g])): t["2"][v]
                           for (f, g), v in dF.compositor.items()}}


def _disp_psf_from_json(doc, pres, disp, path: str):
    from .disp_psfun import DispPsfunctorData

    _obj(doc, path, {"base", "src", "tgt", "F0", "F1", "F2", "identitor", "compositor"})

    def ref(k):
        name = _str(doc[k], f"{path}.{k}")
        if name not in disp:
            raise SchemaError(f"{path}.{k}: unknown displayed presentation {name!r}")
        return disp[name]

    return DispPsfunctorData(psfunctor_from_json(doc["base"], pres, f"{path}.base"),
                             ref("src"), ref("tgt"), _strmap(doc["F0"], f"{path}.F0"),
                             _strmap(doc["F1"], f"{path}.F1"), _strmap(doc["F2"], f"{path}.F2"),
                             _strmap(doc["identitor"], f"{path}.identitor"),
                             _strmap(doc["compositor"], f"{path}.compositor", 2))


def _disp_pstrans_to_json(de, names, ren) -> dict:
    s, t = ren[id(de.src.src)], ren[id(de.src.tgt)]
    return {"base": pstrans_to_json(de.base, names),
            "src": _disp_psf_to_json(de.src, names, ren),
            "tgt": _disp_psf_to_json(de.tgt, names, ren),
            "eta0": {s["o"][k]: t["1"][v] for k, v in de.eta0.items()},
            "eta1": {s["1"][k]: {"theta": t["2"][c.theta], "theta_inv": t["2"][c.theta_inv]}
                     for k, c in de.eta1.items()}}


def _disp_pstrans_from_json(doc, pres, disp, path: str):
    from .disp_psfun import DispPstransData

    _obj(doc, path, {"base", "src", "tgt", "eta0", "eta1"})
    return DispPstransData(pstrans_from_json(doc["base"], pres, f"{path}.base"),
                           _disp_psf_from_json(doc["src"], pres, disp, f"{path}.src"),
                           _disp_psf_from_json(doc["tgt"], pres, disp, f"{path}.tgt"),
                           _strmap(doc["eta0"], f"{path}.eta0"),
                           _invmap_from_json(doc["eta1"], f"{path}.eta1"))


def _disp_mod_to_json(dm, names, ren) -> dict:
    s, t = ren[id(dm.src.src.src)], ren[id(dm.src.src.tgt)]
    return {"base": modification_to_json(dm.base, names),
            "src": _disp_pstrans_to_json(dm.src, names, ren),
            "tgt": _disp_pstrans_to_json(dm.tgt, names, ren),
            "gamma": {s["o"][k]: t["2"][v] for k, v in dm.gamma.items()}}


def _disp_mod_from_json(doc, pres, disp, path: str):
    from .disp_psfun import DispInvModificationData

    _obj(doc, path, {"base", "src", "tgt", "gamma"})
    return DispInvModificationData(modification_from_json(doc["base"], pres, f"{path}.base"),
                                   _disp_pstrans_from_json(doc["src"], pres, disp, f"{path}.src"),
                                   _disp_pstrans_from_json(doc["tgt"], pres, disp, f"{path}.tgt"),
                                   _strmap(doc["gamma"], f"{path}.gamma"))


def disp_biequivalence_to_json(db) -> dict:
    """A self-contained bundle: shared presentations by name, then every component."""
    names = _Names()
    ren: dict[int, dict] = {}
    for dF in (db.L, db.R):
        for d in (dF.src, dF.tgt):
            if id(d) not in ren:
                ren[id(d)] = canonical_renaming(d)
                names.disp_name(d)
    body: dict[str, Any] = {"base": biequivalence_to_json(db.base, names)}
    body.update({k: _disp_psf_to_json(getattr(db, k), names, ren) for k in BIEQ_PSF})
    body.update({k: _disp_pstrans_to_json(getattr(db, k), names, ren) for k in BIEQ_TRANS})
    body.update({k: _disp_mod_to_json(getattr(db, k), names, ren) for k in BIEQ_MODS})
    for d in names.disp.values():
        names.pres_name(d.base)
    body["presentations"] = {k: presentation_to_json(p) for k, p in names.pres.items()}
    body["displayed"] = {k: disp_to_json(d, base=names.pres_name(d.base))
                         for k, d in names.disp.items()}
    return body


def disp_biequivalence_from_json(doc):
    from .disp_psfun import DispBiequivalenceData

    keys = set(BIEQ_PSF + BIEQ_TRANS + BIEQ_MODS)
    _obj(doc, "", keys | {"base", "presentations", "displayed"})
    raw = doc["presentations"]
    if not isinstance(raw, dict):
        raise SchemaError("presentations: expected an object")
    pres = {k: presentation_from_json(v, f"presentations.{k}") for k, v in raw.items()}
    raw = doc["displayed"]
    if not isinstance(raw, dict):
        raise SchemaError("displayed: expected an object")
    disp = {k: disp_from_json(v, path=f"displayed.{k}", bases=pres) for k, v in raw.items()}
    parts: dict[str, Any] = {"base": biequivalence_from_json(doc["base"], pres, "base")}
    parts.update({k: _disp_psf_from_json(doc[k], pres, disp, k) for k in BIEQ_PSF})
    parts.update({k: _disp_pstrans_from_json(doc[k], pres, disp, k) for k in BIEQ_TRANS})
    parts.update({k: _disp_mod_from_json(doc[k], pres, disp, k) for k in BIEQ_MODS})
    return DispBiequivalenceData(**parts)
