"""JSON (de)serialization for factorizations, presentations and curve
systems, plus the bundled fixtures.

Word tokens are strings ``gen`` or ``gen^-1`` (any integer power); twist-word
letters are objects {"curve": name, "exponent": int, "conjugator": [...]}
with conjugators nesting recursively.
"""
from __future__ import annotations

import json
import os
from typing import List

from .errors import SchemaError
from .exact import IntMatrix
from .invariants import Factorization
from .presentations import FinitePresentation, format_word, parse_word
from .surfaces import Curve, SurfaceData
from .systems import CurveSystem
from .words import TwistLetter, TwistWord

_FIXTURE_ENV = "TWISTLAB_FIXTURES"
FIXTURE_NAMES = ("E1", "genus2-paper", "genus3-b1", "wajnryb-map21", "sl2z-amalgam")


def _require(cond: bool, msg: str):
    if not cond:
        raise SchemaError(msg)


# ---------------------------------------------------------------------------
# factorizations


def factorization_to_dict(f: Factorization) -> dict:
    gens = _surface_generators(f.fiber_genus)
    return {
        "fiber_genus": f.fiber_genus,
        "base_genus": f.base_genus,
        "curves": [
            {
                "name": c.name,
                "homology": list(c.homology),
                "separating": c.separating,
                **({"word": format_word(c.word, gens)} if c.word is not None else {}),
            }
            for c in f.curves
        ],
        "word": [_letter_to_dict(l) for l in f.word.letters],
        **(
            {
                "commutator_part": [
                    [[list(r) for r in x.entries], [list(r) for r in y.entries]]
                    for x, y in f.commutator_part
                ]
            }
            if f.commutator_part is not None
            else {}
        ),
    }


def _letter_to_dict(l: TwistLetter) -> dict:
    d = {"curve": l.curve.name, "exponent": l.exponent}
    if l.conjugator is not None:
        d["conjugator"] = [_letter_to_dict(x) for x in l.conjugator.letters]
    return d


def _surface_generators(genus: int) -> List[str]:
    out = []
    for i in range(1, genus + 1):
        out += [f"a{i}", f"b{i}"]
    return out


def factorization_from_dict(data: dict) -> Factorization:
    _require(isinstance(data, dict), "factorization must be an object")
    for key in ("fiber_genus", "base_genus", "curves", "word"):
        _require(key in data, f"missing key {key!r}")
    g = data["fiber_genus"]
    _require(isinstance(g, int) and g >= 0, "fiber_genus must be a non-negative int")
    k = data["base_genus"]
    _require(isinstance(k, int) and k >= 0, "base_genus must be a non-negative int")
    gens = _surface_generators(g)

    curves = {}
    for cd in data["curves"]:
        _require(isinstance(cd, dict), "curve entries must be objects")
        name = cd.get("name")
        _require(isinstance(name, str) and name, "curve needs a name")
        _require(name not in curves, f"duplicate curve {name!r}")
        hom = cd.get("homology")
        _require(
            isinstance(hom, list) and len(hom) == 2 * g,
            f"curve {name}: homology must have length {2 * g}",
        )
        word = None
        if "word" in cd and cd["word"] is not None:
            word = parse_word(cd["word"], gens)
        try:
            curves[name] = Curve(
                name,
                tuple(int(x) for x in hom),
                separating=bool(cd.get("separating", all(x == 0 for x in hom))),
                word=word,
            )
        except Exception as ex:
            raise SchemaError(f"curve {name}: {ex}")

    def letter_from(d: dict) -> TwistLetter:
        _require(isinstance(d, dict), "word letters must be objects")
        _require(d.get("curve") in curves, f"letter references unknown curve {d.get('curve')!r}")
        exp = d.get("exponent", 1)
        _require(isinstance(exp, int) and exp != 0, "letter exponent must be a nonzero int")
        conj = None
        if d.get("conjugator"):
            conj = TwistWord(g, tuple(letter_from(x) for x in d["conjugator"]))
        return TwistLetter(curves[d["curve"]], exp, conjugator=conj)

    word = TwistWord(g, tuple(letter_from(d) for d in data["word"]))

    comm = None
    if data.get("commutator_part") is not None:
        pairs = []
        for entry in data["commutator_part"]:
            _require(
                isinstance(entry, list) and len(entry) == 2,
                "commutator_part entries are pairs of matrices",
            )
            pairs.append((IntMatrix(entry[0]), IntMatrix(entry[1])))
        comm = tuple(pairs)

    return Factorization(
        fiber_genus=g,
        base_genus=k,
        word=word,
        curves=tuple(curves.values()),
        commutator_part=comm,
    )


# ---------------------------------------------------------------------------
# presentations


def presentation_to_dict(p: FinitePresentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [format_word(r, p.generators) for r in p.relators],
    }


def presentation_from_dict(data: dict) -> FinitePresentation:
    _require(isinstance(data, dict), "presentation must be an object")
    gens = data.get("generators")
    _require(
        isinstance(gens, list) and all(isinstance(x, str) for x in gens),
        "generators must be a list of names",
    )
    rels = data.get("relators", [])
    words = tuple(parse_word(r, gens) for r in rels)
    return FinitePresentation(tuple(gens), words)


# ---------------------------------------------------------------------------
# curve systems


def curve_system_to_dict(s: CurveSystem) -> dict:
    gens = _surface_generators(s.surface.genus)
    return {
        "genus": s.surface.genus,
        "curves": [
            {
                "name": c.name,
                "homology": list(c.homology),
                "separating": c.separating,
                **({"word": format_word(c.word, gens)} if c.word is not None else {}),
            }
            for c in s.curves
        ],
        "intersections": [[a, b, k] for a, b, k in s.intersections],
    }


def curve_system_from_dict(data: dict) -> CurveSystem:
    g = data.get("genus")
    _require(isinstance(g, int) and g >= 0, "genus must be a non-negative int")
    gens = _surface_generators(g)
    curves = []
    for cd in data.get("curves", []):
        word = parse_word(cd["word"], gens) if cd.get("word") else None
        curves.append(
            Curve(
                cd["name"],
                tuple(cd["homology"]),
                separating=bool(cd.get("separating", all(x == 0 for x in cd["homology"]))),
                word=word,
            )
        )
    inter = tuple((a, b, int(k)) for a, b, k in data.get("intersections", []))
    return CurveSystem(SurfaceData(g), tuple(curves), inter)


# ---------------------------------------------------------------------------
# files and fixtures


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise SchemaError(f"cannot read {path}: {ex}")


def fixtures_dir() -> str:
    override = os.environ.get(_FIXTURE_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    path = os.path.join(fixtures_dir(), f"{name}.json")
    if not os.path.exists(path):
        raise SchemaError(f"no fixture {name!r} at {path}")
    return path


def load_fixture(name: str):
    data = load_json(fixture_path(name))
    if "generators" in data:
        return presentation_from_dict(data)
    return factorization_from_dict(data)
