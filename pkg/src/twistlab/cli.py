"""twistlab command-line interface.

Exit codes: 0 pass, 1 input error, 2 verification failure, 3 certificate
contradiction.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import SchemaError, TwistlabError, ZeroCharacter
from .exact import IntMatrix, rank_over_rationals
from .invariants import invariant_report
from .metaplectic import (
    MetaElement,
    boundary_multiplicity,
    evaluate_meta_word,
    parse_meta_word,
    szpiro_check,
)
from .presentations import (
    SurfaceGroup,
    abelianize,
    lift_loop,
    parse_word,
    reidemeister_schreier_double_cover,
)
from .schema import (
    FIXTURE_NAMES,
    factorization_from_dict,
    fixture_path,
    fixtures_dir,
    load_json,
    presentation_from_dict,
)
from .systems import build_geometric_presentation, verify_geometric_presentation

E_OK, E_INPUT, E_VERIFY, E_CONTRADICTION = 0, 1, 2, 3


def _emit(payload: dict, as_json: bool):
    if as_json:
        print(json.dumps(payload, indent=1, default=str))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")


def cmd_verify(args) -> int:
    try:
        data = load_json(args.file)
        f = factorization_from_dict(data)
        ok, residual = f.verify_homological()
    except (SchemaError, TwistlabError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    payload = {
        "relation_verified_homologically": ok,
        "note": "mapping-class-group identity assumed as input",
    }
    if not ok:
        payload["residual"] = [list(r) for r in residual.entries]
    _emit(payload, args.json)
    return E_OK if ok else E_VERIFY


def cmd_invariants(args) -> int:
    try:
        data = load_json(args.file)
        f = factorization_from_dict(data)
        rep = invariant_report(f, external_signature=args.signature)
    except (SchemaError, TwistlabError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1))
    else:
        print(rep.text())
    if not rep.relation_verified:
        return E_VERIFY
    if not rep.torelli_ok:
        return E_CONTRADICTION
    return E_OK


def cmd_geompres(args) -> int:
    try:
        data = load_json(args.file)
        genus = data.get("genus")
        if not isinstance(genus, int) or genus < 1:
            raise SchemaError("need a positive integer genus")
        group = SurfaceGroup(genus)
        gens = group.generator_names
        relators = [parse_word(r, gens) for r in data.get("relators", [])]
        gp = build_geometric_presentation(
            group, relators, ensure_nonseparating=bool(data.get("ensure_nonseparating"))
        )
    except (SchemaError, TwistlabError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    report = verify_geometric_presentation(gp)
    from .schema import curve_system_to_dict

    payload = {
        "genus": gp.genus,
        "crossings": gp.crossings,
        "system": curve_system_to_dict(gp.system),
        "verification": report,
    }
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        print(f"genus e = {gp.genus} (base {gp.base.genus} + {gp.crossings} crossings)")
        print(f"curves: {[c.name for c in gp.system.curves]}")
        edges = [f"{a}-{b}:{k}" for a, b, k in gp.system.intersections if k]
        print(f"dual graph edges: {edges}")
        for k, v in report.items():
            print(f"{k}: {v}")
    return E_OK if report["pass"] else E_VERIFY


def cmd_metaplectic(args) -> int:
    try:
        word = parse_meta_word(args.word)
        value = evaluate_meta_word(word)
    except (SchemaError, TwistlabError) as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return E_INPUT
    payload = {"matrix": [list(r) for r in value.matrix], "n": value.n}
    from .words import is_positive

    if is_positive(word):
        res = boundary_multiplicity(word)
        if isinstance(res, MetaElement):
            payload["central"] = False
            payload["residual"] = {"matrix": [list(r) for r in res.matrix], "n": res.n}
            _emit(payload, args.json)
            return E_VERIFY
        rep = szpiro_check(word)
        payload.update(
            central=True,
            boundary_multiplicity=rep.n,
            sum_exponents=rep.sum_exponents,
            syllables=rep.syllables,
            sigma_squared=rep.sigma_squared,
            szpiro_passes=rep.passes,
        )
    _emit(payload, args.json)
    return E_OK


def cmd_cover(args) -> int:
    try:
        chi = tuple(int(x) for x in args.chi.split(","))
        group = SurfaceGroup(args.genus)
        cover = reidemeister_schreier_double_cover(group, chi)
    except ZeroCharacter as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    except (SchemaError, TwistlabError, ValueError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    inv = abelianize(cover.cover_presentation)
    payload = {
        "cover_generators": list(cover.cover_presentation.generators),
        "cover_h1": str(inv),
        "loops": [],
    }
    classes = []
    gens = group.generator_names
    try:
        for loop in args.loop or []:
            w = parse_word(loop.split(), gens)
            res = lift_loop(cover, w)
            payload["loops"].append(
                {
                    "loop": loop,
                    "chi": res.chi_value,
                    "lift_classes": [list(c) for c in res.classes],
                }
            )
            classes.extend(res.classes)
    except (SchemaError, TwistlabError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    if classes:
        payload["span_rank"] = rank_over_rationals(IntMatrix(classes))
    _emit(payload, args.json)
    return E_OK


def cmd_abelianize(args) -> int:
    try:
        data = load_json(args.file)
        pres = presentation_from_dict(data)
    except (SchemaError, TwistlabError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return E_INPUT
    inv = abelianize(pres)
    _emit(
        {
            "free_rank": inv.free_rank,
            "torsion": list(inv.torsion),
            "group": str(inv),
        },
        args.json,
    )
    return E_OK


def cmd_fixtures(args) -> int:
    payload = {
        "directory": fixtures_dir(),
        "fixtures": {name: fixture_path(name) for name in FIXTURE_NAMES},
    }
    _emit(payload, args.json)
    return E_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistlab",
        description="Exact computations with Dehn-twist monodromy factorizations.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="homological relation check of a factorization file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("invariants", help="full invariant report of a factorization file")
    i.add_argument("file")
    i.add_argument("--signature", type=int, default=None,
                   help="externally supplied signature for cases the tool does not compute")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_invariants)

    g = sub.add_parser("geompres", help="build and verify a geometric presentation")
    g.add_argument("file", help='JSON {"genus": g, "relators": [["a1","b1^-1"], ...]}')
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_geompres)

    m = sub.add_parser(
        "metaplectic",
        help="evaluate a genus-1 twist word in the metaplectic group",
        epilog='syntax: "(a b)^6", "a^3 b^-1", "[w] a [w]^-1" for a conjugated letter',
    )
    m.add_argument("word")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_metaplectic)

    c = sub.add_parser("cover", help="index-2 cover of a surface group with loop lifts")
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--chi", required=True, help="comma-separated 0/1 values on a1,b1,...")
    c.add_argument("--loop", action="append",
                   help='base loop as space-separated tokens, e.g. "a1 b1^-1"')
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cover)

    a = sub.add_parser("abelianize", help="abelian invariants of a presentation file")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_abelianize)

    f = sub.add_parser("fixtures", help="list bundled fixture files")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
