"""Command-line entry point: JSON reports on stdout, exit 0 pass, 1 fail, 2 invalid input, 3 budget."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any

from .budget import Budget, default_budget
from .errors import (
    BikernelError, ConstructionFailed, EnumerationBudgetExceeded, SchemaError,
)
from . import serialize as ser

PASS, FAIL, INVALID, BUDGET = 0, 1, 2, 3


class Outcome(Exception):
    """Carries a report and an exit code out of a subcommand."""

    def __init__(self, doc: Any, code: int):
        self.doc, self.code = doc, code


def _emit(doc: Any, out: str | None = None) -> None:
    text = ser.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _report(doc: dict, ok: bool) -> int:
    _emit(doc)
    return PASS if ok else FAIL


def _lawful_presentation(path: str, budget: Budget):
    from .core import check_laws, validate_presentation

    p = ser.read_presentation(path)
    rep = validate_presentation(p)
    if rep.ok:
        rep = check_laws(p, budget)
    if not rep.ok:
        raise Outcome(rep.to_json(), INVALID)
    return p


def _lawful_disp(path: str, budget: Budget):
    from .display import check_disp_laws

    d = ser.read_disp(path)
    rep = check_disp_laws(d, budget)
    if not rep.ok:
        raise Outcome(rep.to_json(), INVALID)
    return d


# ---------------------------------------------------------------- check

def cmd_check(args, budget: Budget) -> int:
    if args.disp_biequiv:
        from .disp_psfun import check_disp_biequivalence

        db = ser.disp_biequivalence_from_json(ser.load(args.disp_biequiv))
        rep = check_disp_biequivalence(db)
        return _report(rep.to_json(), rep.ok)
    if args.cwf:
        from .catinst import check_cwf_representation

        C, Ty, Tm, p = ser.cwf_from_json(ser.load(args.cwf))
        rep = check_cwf_representation(C, Ty, Tm, p, budget)
        doc = {"status": "pass" if rep.ok else "fail",
               "witnesses": {ser.join(k): list(v) for k, v in sorted(rep.witnesses.items())},
               "failing": [ser.join(k) for k in rep.failing]}
        return _report(doc, rep.ok)
    if not args.file:
        raise SchemaError("check needs a file, --disp-biequiv or --cwf")
    if args.displayed:
        from .display import check_disp_laws

        rep = check_disp_laws(ser.read_disp(args.file), budget)
        return _report(rep.to_json(), rep.ok)
    from .core import check_laws, validate_presentation

    p = ser.read_presentation(args.file)
    rep = validate_presentation(p)
    if rep.ok:
        rep = check_laws(p, budget)
    return _report(rep.to_json(), rep.ok)


# ---------------------------------------------------------------- univalence

def cmd_univalence(args, budget: Budget) -> int:
    local = args.mode in ("local", "both")
    global_ = args.mode in ("global", "both")
    if args.displayed:
        from .display import check_disp_univalence

        d = _lawful_disp(args.file, budget)
        rep = check_disp_univalence(d, budget, local, global_)
    else:
        from .univalence import check_univalent

        p = _lawful_presentation(args.file, budget)
        rep = check_univalent(p, budget, local, global_)
    return _report(rep.to_json(), rep.ok)


# ---------------------------------------------------------------- build

def _build_doc(args, budget: Budget) -> dict:
    kind = args.kind
    ins = args.inputs
    if kind == "pseudo":
        from .psfun import build_pseudo_bicat

        src = args.src or (ins[0] if ins else None)
        tgt = args.tgt or (ins[1] if len(ins) > 1 else None)
        if not (src and tgt):
            raise SchemaError("build pseudo needs --src and --tgt")
        B = _lawful_presentation(src, budget)
        C = _lawful_presentation(tgt, budget)
        return ser.presentation_to_json(build_pseudo_bicat(B, C, budget))
    if kind == "monads":
        from .algebra import monad_tower

        tower = monad_tower(_lawful_presentation(_one(ins, kind), budget), budget)
        if args.expose_tower:
            out = Path(args.expose_tower)
            out.mkdir(parents=True, exist_ok=True)
            for name in ("algebras", "unit_layer", "mult_layer", "structured", "monads"):
                (out / f"{name}.json").write_text(ser.dumps(ser.disp_to_json(getattr(tower, name))))
        return ser.presentation_to_json(tower.bicat)
    if kind == "total":
        return ser.presentation_to_json(_lawful_disp(_one(ins, kind), budget).total)
    if kind == "product":
        from .display import prod_disp

        if len(ins) != 2:
            raise SchemaError("build product needs two displayed files")
        return ser.disp_to_json(prod_disp(_lawful_disp(ins[0], budget), _lawful_disp(ins[1], budget)))
    if kind == "sigma":
        from .display import sigma_disp

        if len(ins) != 2:
            raise SchemaError("build sigma needs two displayed files")
        return ser.disp_to_json(sigma_disp(_lawful_disp(ins[0], budget), _lawful_disp(ins[1], budget)))
    if kind == "fullsub":
        from .display import fullsub_disp

        B = _lawful_presentation(_one(ins, kind), budget)
        keep = set(args.objects.split(",")) if args.objects else set()
        unknown = keep - set(B.objects)
        if unknown:
            raise SchemaError(f"--objects: unknown object {sorted(unknown)[0]!r}")
        return ser.disp_to_json(fullsub_disp(B, lambda a: a in keep))
    if kind == "trivial":
        from .display import trivial_disp

        if len(ins) != 2:
            raise SchemaError("build trivial needs a base and a fiber presentation")
        return ser.disp_to_json(trivial_disp(_lawful_presentation(ins[0], budget),
                                             _lawful_presentation(ins[1], budget)))
    if kind == "chaotic":
        from .display import chaotic_disp

        path = _one(ins, kind)
        B, d0, d1, ids, comps = _chaotic_inputs(ser.load(path), Path(path).parent)
        return ser.disp_to_json(chaotic_disp(B, d0, d1, ids, comps))
    if kind in ("fragment", "kleisli", "cwf"):
        from .catinst import build_fragment, cwf2_layers, kleisli_layer

        frag = build_fragment(ser.categories_from_json(ser.load(_one(ins, kind))), budget)
        if kind == "fragment":
            return ser.presentation_to_json(frag.bicat)
        if kind == "kleisli":
            d = kleisli_layer(frag, budget).disp
        else:
            d = cwf2_layers(frag, None, args.bound, budget).cwf
        return ser.disp_to_json(d) if args.displayed else ser.presentation_to_json(d.total)
    raise SchemaError(f"unknown build kind {kind!r}")


def _one(ins: list[str], kind: str) -> str:
    if len(ins) != 1:
        raise SchemaError(f"build {kind} needs exactly one input file")
    return ins[0]


def _chaotic_inputs(doc, base_dir: Path):
    """Base, fibers over objects and 1-cells, and the displayed identity/composite tables."""
    ser._obj(doc, "", {"base", "d0", "d1", "id1", "comp1"})
    raw = doc["base"]
    B = ser.presentation_from_json(ser.load(base_dir / raw) if isinstance(raw, str) else raw, "base")
    if not isinstance(doc["d0"], dict):
        raise SchemaError("d0: expected an object")
    d0 = {a: ser._strlist(xs, f"d0.{a}") for a, xs in doc["d0"].items()}
    if not isinstance(doc["d1"], dict):
        raise SchemaError("d1: expected an object")
    d1 = {ser.split(k, 3, "d1"): ser._strlist(v, f"d1.{k}") for k, v in doc["d1"].items()}
    ids = ser._strmap(doc["id1"], "id1", 2)
    comps = ser._strmap(doc["comp1"], "comp1", 4)
    return B, d0, d1, ids, comps


def cmd_build(args, budget: Budget) -> int:
    doc = _build_doc(args, budget)
    if args.out:
        _emit(doc, args.out)
        _emit({"status": "pass", "out": args.out})
    else:
        _emit(doc)
    return PASS


# ---------------------------------------------------------------- find

def cmd_find(args, budget: Budget) -> int:
    kind = args.kind
    if kind == "adjequiv":
        from .core import adjoint_equivalences

        p = _lawful_presentation(args.file, budget)
        if not (args.src and args.tgt):
            raise SchemaError("find adjequiv needs --src and --tgt")
        found = adjoint_equivalences(p, args.src, args.tgt, budget)
        items = [{"f": e.f, "g": e.g, "eta": [e.eta.theta, e.eta.theta_inv],
                  "eps": [e.eps.theta, e.eps.theta_inv]} for e in found]
        return _report({"status": "pass" if items else "fail", "count": len(items),
                        "adjoint_equivalences": items}, bool(items))
    if kind == "biinitial":
        from .core import is_biinitial

        p = _lawful_presentation(args.file, budget)
        hits = [a for a in p.objects if is_biinitial(p, a)]
        return _report({"status": "pass" if hits else "fail", "objects": hits}, bool(hits))
    if kind == "psfunctors":
        from .psfun import enumerate_psfunctors

        if not (args.src and args.tgt):
            raise SchemaError("find psfunctors needs --src and --tgt files")
        B = _lawful_presentation(args.src, budget)
        C = _lawful_presentation(args.tgt, budget)
        found = enumerate_psfunctors(B, C, budget)
        names = ser._Names()
        names.pres_name(B)
        names.pres_name(C)
        items = [ser.psfunctor_to_json(F, names) for F in found]
        return _report({"status": "pass" if items else "fail", "count": len(items),
                        "presentations": {"P0": args.src, "P1": args.tgt},
                        "psfunctors": items}, bool(items))
    if kind == "monads":
        from .algebra import enumerate_monads

        p = _lawful_presentation(args.file, budget)
        found = enumerate_monads(p, budget)
        items = [{"object": s.a, "m": s.m, "eta": s.eta, "mu": s.mu} for s in found]
        return _report({"status": "pass" if items else "fail", "count": len(items),
                        "monads": items}, bool(items))
    raise SchemaError(f"unknown find kind {kind!r}")


# ---------------------------------------------------------------- yoneda

def cmd_yoneda(args, budget: Budget) -> int:
    from .yoneda import representable0, yoneda_check

    B = _lawful_presentation(args.file, budget)
    if args.object not in B.objects:
        raise SchemaError(f"--object: unknown object {args.object!r}")
    if args.presheaf:
        P = ser.cat_psfunctor_from_json(ser.load(args.presheaf), B)
    else:
        P = representable0(B, args.object)
    rep = yoneda_check(B, P, args.object, budget)
    return _report(rep.to_json(), rep.ok)


# ---------------------------------------------------------------- fuzz

def cmd_fuzz(args, budget: Budget) -> int:
    from .corpus import run_fuzz

    if args.count < 1:
        raise SchemaError("--count must be at least 1")
    s = run_fuzz(args.seed, args.count, budget)
    return _report(s.to_json(), s.ok)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bikernel", description=__doc__)
    ap.add_argument("--budget", type=int, default=None,
                    help="enumeration budget in candidate tuples (default: BIKERNEL_BUDGET or 10^7)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a presentation and check its laws")
    c.add_argument("file", nargs="?")
    c.add_argument("--displayed", action="store_true", help="the file is a displayed presentation")
    c.add_argument("--disp-biequiv", metavar="BUNDLE", help="check a displayed biequivalence bundle")
    c.add_argument("--cwf", metavar="FILE", help="check the comprehension property of CwF data")
    c.set_defaults(run=cmd_check)

    u = sub.add_parser("univalence", help="decide local and global univalence")
    u.add_argument("file")
    g = u.add_mutually_exclusive_group()
    g.add_argument("--local", dest="mode", action="store_const", const="local")
    g.add_argument("--global", dest="mode", action="store_const", const="global")
    g.add_argument("--both", dest="mode", action="store_const", const="both")
    u.add_argument("--displayed", action="store_true", help="fiberwise displayed univalence")
    u.set_defaults(run=cmd_univalence, mode="both")

    b = sub.add_parser("build", help="run a construction and emit its JSON document")
    b.add_argument("kind", choices=["pseudo", "monads", "total", "product", "sigma", "fullsub",
                                    "trivial", "chaotic", "fragment", "kleisli", "cwf"])
    b.add_argument("inputs", nargs="*")
    b.add_argument("--src")
    b.add_argument("--tgt")
    b.add_argument("--out")
    b.add_argument("--objects", help="comma-separated objects kept by fullsub")
    b.add_argument("--expose-tower", metavar="DIR", help="write the monad tower layers to DIR")
    b.add_argument("--displayed", action="store_true",
                   help="emit kleisli/cwf as displayed presentations over the fragment")
    b.add_argument("--bound", type=int, default=1, help="presheaf carrier bound for cwf")
    b.set_defaults(run=cmd_build)

    f = sub.add_parser("find", help="search for structures in a presentation")
    f.add_argument("kind", choices=["adjequiv", "biinitial", "psfunctors", "monads"])
    f.add_argument("file", nargs="?")
    f.add_argument("--src")
    f.add_argument("--tgt")
    f.set_defaults(run=cmd_find)

    y = sub.add_parser("yoneda", help="check the Yoneda equivalence at an object")
    y.add_argument("file")
    y.add_argument("--object", required=True)
    y.add_argument("--presheaf", help="a category-valued pseudofunctor (default: representable)")
    y.set_defaults(run=cmd_yoneda)

    z = sub.add_parser("fuzz", help="check the univalence theorems on the generated corpus")
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--count", type=int, default=200)
    z.set_defaults(run=cmd_fuzz)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return INVALID if e.code else PASS
    try:
        if args.budget is not None and args.budget < 1:
            raise SchemaError("--budget must be at least 1")
        budget = Budget(args.budget if args.budget is not None else default_budget())
        if args.command == "find" and args.kind != "psfunctors" and not args.file:
            raise SchemaError(f"find {args.kind} needs a presentation file")
        return args.run(args, budget)
    except Outcome as o:
        _emit(o.doc)
        return o.code
    except EnumerationBudgetExceeded as e:
        _emit({"status": "budget_exceeded", "error": type(e).__name__, "message": str(e)})
        return BUDGET
    except ConstructionFailed as e:
        _emit({"status": "fail", "error": type(e).__name__, "message": str(e)})
        return FAIL
    except (BikernelError, OSError, ValueError) as e:
        _emit({"status": "invalid", "error": type(e).__name__, "message": str(e)})
        return INVALID


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
