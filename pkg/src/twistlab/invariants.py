"""Invariants of the total space determined by a monodromy factorization.

Signatures are only computed in the two pinned cases (fiber genus one via the
metaplectic boundary multiplicity, and all-separating vanishing cycles);
anything else is an external input or unknown, and the provenance travels
with the value so downstream formulas never silently mix.  Every report also
records that relations are certified homologically only; the mapping class
group identity is assumed as input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import (
    GenusMismatch,
    LambdaUnknown,
    MissingCommutatorData,
    MissingWords,
    NotCentral,
    NotPositive,
    SchemaError,
    SignatureUnknown,
)
from .exact import IntMatrix, smith_normal_form
from .metaplectic import MetaElement, boundary_multiplicity
from .presentations import (
    AbelianInvariants,
    FinitePresentation,
    SurfaceGroup,
    abelianize,
    quotient_by_normal_closure,
)
from .surfaces import Curve, is_symplectic
from .words import TwistWord, evaluate_homological, is_positive

RELATION_CAVEAT = (
    "relation verified homologically; mapping-class-group identity assumed as input"
)


@dataclass(frozen=True)
class Factorization:
    """A monodromy factorization: fiber genus, base genus (0 for the sphere),
    the twist word, its curves, and for a positive-genus base the homological
    images of the commutator factors."""

    fiber_genus: int
    base_genus: int
    word: TwistWord
    curves: Tuple[Curve, ...]
    commutator_part: Optional[Tuple[Tuple[IntMatrix, IntMatrix], ...]] = None

    def __post_init__(self):
        if self.word.genus != self.fiber_genus:
            raise GenusMismatch("word does not live on the fiber surface")
        names = {c.name for c in self.curves}
        for l in self.word.letters:
            if l.curve.name not in names:
                raise SchemaError(f"word references unknown curve {l.curve.name!r}")
        if self.commutator_part is not None:
            for x, y in self.commutator_part:
                if not (is_symplectic(x) and is_symplectic(y)):
                    raise SchemaError("commutator factors must be symplectic")

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def cycle_classes(self) -> List[tuple]:
        """Homology classes of the vanishing cycles, one per distinct curve
        used by the word, in first-use order."""
        out = []
        seen = set()
        for l in self.word.letters:
            if l.curve.name not in seen:
                seen.add(l.curve.name)
                out.append(tuple(l.curve.homology))
        return out

    def verify_homological(self) -> Tuple[bool, IntMatrix]:
        """Base genus 0: the word must evaluate to the identity.  Higher
        base: it must equal the product of the supplied commutators."""
        m = evaluate_homological(self.word)
        if self.base_genus == 0:
            return m.is_identity(), m
        target = IntMatrix.identity(2 * self.fiber_genus)
        if self.commutator_part is None:
            if len(self.word.letters) == 0:
                return m.is_identity(), m
            raise MissingCommutatorData("base genus > 0 needs commutator data")
        for x, y in self.commutator_part:
            target = target * (x * y * _inv(x) * _inv(y))
        residual = m * _inv(target)
        return residual.is_identity(), residual


def _inv(m: IntMatrix) -> IntMatrix:
    from .surfaces import symplectic_j

    j = symplectic_j(m.rows // 2)
    return (-j) * m.transpose() * j


def mu(f: Factorization) -> int:
    """Number of singular fibers: each letter t^n contributes n."""
    if not is_positive(f.word):
        raise NotPositive("mu is defined for positive factorizations")
    return f.word.total_exponent()


def euler_characteristic(f: Factorization) -> int:
    """(2 - 2k)(2 - 2g) + mu; the genus-0 base case is the pinned formula,
    the general base is the standard product-plus-mu extension."""
    m = f.word.total_exponent()
    return (2 - 2 * f.base_genus) * (2 - 2 * f.fiber_genus) + m


def pi1_presentation(f: Factorization) -> FinitePresentation:
    """Surface group of the fiber modulo the vanishing-cycle words."""
    if f.base_genus != 0:
        raise SchemaError("pi1 presentation implemented for base genus 0")
    words = []
    for name in f.word.curves_used():
        c = f.curve(name)
        if c.word is None:
            raise MissingWords(f"curve {name} carries no fundamental-group word")
        words.append(c.word)
    return quotient_by_normal_closure(SurfaceGroup(f.fiber_genus).presentation(), words)


def h1_total_space(f: Factorization) -> AbelianInvariants:
    """H1 of the total space: Z^2g modulo the span of the vanishing-cycle
    classes (Smith normal form)."""
    if f.base_genus != 0:
        raise SchemaError("h1 computed for base genus 0")
    classes = f.cycle_classes()
    g2 = 2 * f.fiber_genus
    if not classes:
        return AbelianInvariants(free_rank=g2, torsion=())
    snf = smith_normal_form(IntMatrix(classes))
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianInvariants(free_rank=g2 - snf.rank, torsion=torsion)


def signature(f: Factorization, external: Optional[int] = None) -> Tuple[Optional[int], str]:
    """(value, provenance), provenance one of computed/external/unknown.

    Computed cases: all vanishing cycles null-homologous (sign = -mu), or
    fiber genus one with non-separating cycles (sign = 4n - mu via the
    metaplectic boundary multiplicity)."""
    if not is_positive(f.word):
        raise NotPositive("signature formulas assume a positive factorization")
    m = f.word.total_exponent()
    cycles = [f.curve(n) for n in f.word.curves_used()]
    if not cycles:
        return 0, "computed"  # smooth product fibration
    if all(c.separating for c in cycles):
        return -m, "computed"
    if f.fiber_genus == 1 and cycles and all(not c.separating for c in cycles):
        res = boundary_multiplicity(f.word)
        if isinstance(res, MetaElement):
            raise NotCentral(res)
        return 4 * res - m, "computed"
    if external is not None:
        return int(external), "external"
    return None, "unknown"


def hodge_pairing(f: Factorization, external_signature: Optional[int] = None) -> Fraction:
    """lambda = (sign + mu)/4; raises when the signature is unknown and
    reports non-integer values as an inconsistency."""
    sign, prov = signature(f, external_signature)
    if sign is None:
        raise SignatureUnknown("hodge pairing needs a signature")
    lam = Fraction(sign + f.word.total_exponent(), 4)
    if lam.denominator != 1:
        raise SchemaError(f"non-integer hodge pairing {lam}: inconsistent input")
    return lam


@dataclass(frozen=True)
class TorelliReport:
    ok: bool
    reason: str


def torelli_certificate(f: Factorization) -> TorelliReport:
    """Contradiction when every vanishing cycle is null-homologous (such a
    positive word cannot come from a genuine fibration: it would force the
    Hodge pairing to vanish where positivity is required); otherwise Ok, with
    sign + mu > 0 asserted whenever the signature is known."""
    if f.base_genus != 0:
        raise SchemaError("certificate applies to sphere-base factorizations")
    if not f.word.letters or not is_positive(f.word):
        raise NotPositive("certificate needs a nonempty positive word")
    cycles = [f.curve(n) for n in f.word.curves_used()]
    if all(c.separating for c in cycles):
        m = f.word.total_exponent()
        return TorelliReport(
            ok=False,
            reason=(
                f"all {len(cycles)} vanishing cycles are null-homologous: "
                f"hodge pairing (sign + mu)/4 = ({-m} + {m})/4 = 0, "
                "but a genuine fibration forces it positive"
            ),
        )
    sign, prov = None, "unknown"
    try:
        sign, prov = signature(f)
    except NotCentral:
        pass
    if sign is not None and sign + f.word.total_exponent() <= 0:
        return TorelliReport(
            ok=False, reason=f"sign + mu = {sign + f.word.total_exponent()} <= 0"
        )
    return TorelliReport(ok=True, reason="contains a non-separating vanishing cycle")


@dataclass(frozen=True)
class LiuBound:
    lam: Fraction
    bound: Fraction
    passes: bool


def liu_bound_report(f: Factorization, external_signature: Optional[int] = None) -> LiuBound:
    """Exact rational check of lambda > (4g - 5)/6."""
    try:
        lam = hodge_pairing(f, external_signature)
    except SignatureUnknown as ex:
        raise LambdaUnknown(str(ex))
    bound = Fraction(4 * f.fiber_genus - 5, 6)
    return LiuBound(lam=lam, bound=bound, passes=lam > bound)


def fiber_sum(f1: Factorization, f2: Factorization) -> Factorization:
    """Glue along a regular fiber: concatenated word, curves merged by name
    (names shared between the summands must carry identical data)."""
    if f1.fiber_genus != f2.fiber_genus:
        raise GenusMismatch("fiber sum needs equal fiber genus")
    if f1.base_genus != 0 or f2.base_genus != 0:
        raise GenusMismatch("fiber sum implemented over the sphere")
    merged: Dict[str, Curve] = {c.name: c for c in f1.curves}
    for c in f2.curves:
        if c.name in merged and merged[c.name] != c:
            raise SchemaError(f"curve {c.name!r} differs between summands")
        merged[c.name] = c
    return Factorization(
        fiber_genus=f1.fiber_genus,
        base_genus=0,
        word=f1.word * f2.word,
        curves=tuple(merged.values()),
    )


@dataclass(frozen=True)
class HigherBaseReport:
    identity_holds: bool
    residual: IntMatrix
    kernel_presentation: Optional[FinitePresentation]
    kernel_abelianization: Optional[AbelianInvariants]


def verify_higher_base(f: Factorization) -> HigherBaseReport:
    """Check eval(word) equals the product of the supplied commutators, and
    emit the fiber-side quotient (relators = vanishing-cycle words) with its
    abelianization."""
    if f.base_genus <= 0:
        raise SchemaError("base genus must be positive")
    if f.commutator_part is None and f.word.letters:
        raise MissingCommutatorData("commutator data required")
    ok, residual = f.verify_homological()
    pres = None
    ab = None
    try:
        words = []
        for name in f.word.curves_used():
            c = f.curve(name)
            if c.word is None:
                raise MissingWords(name)
            words.append(c.word)
        pres = quotient_by_normal_closure(
            SurfaceGroup(f.fiber_genus).presentation(), words
        )
        ab = abelianize(pres)
    except MissingWords:
        pass
    return HigherBaseReport(
        identity_holds=ok,
        residual=residual,
        kernel_presentation=pres,
        kernel_abelianization=ab,
    )


@dataclass(frozen=True)
class InvariantReport:
    mu: int
    euler: int
    b1: int
    b2: int
    signature: Optional[int]
    signature_provenance: str
    lam: Optional[Fraction]
    c1_squared: Optional[int]
    szpiro: Optional[dict]
    torelli_ok: bool
    torelli_reason: str
    liu_status: str
    relation_verified: bool
    euler_note: str
    caveat: str = RELATION_CAVEAT

    def consistency_ok(self) -> bool:
        if self.b2 != self.euler - 2 + 2 * self.b1:
            return False
        if self.signature is not None and abs(self.signature) > self.b2:
            return False
        if self.signature is not None and self.c1_squared is not None:
            if self.c1_squared != 2 * self.euler + 3 * self.signature:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "euler": self.euler,
            "b1": self.b1,
            "b2": self.b2,
            "signature": self.signature,
            "signature_provenance": self.signature_provenance,
            "lambda": None if self.lam is None else str(self.lam),
            "c1_squared": self.c1_squared,
            "szpiro": self.szpiro,
            "torelli_ok": self.torelli_ok,
            "torelli_reason": self.torelli_reason,
            "liu_status": self.liu_status,
            "relation_verified_homologically": self.relation_verified,
            "euler_note": self.euler_note,
            "caveat": self.caveat,
        }

    def text(self) -> str:
        d = self.to_dict()
        lines = [f"{k}: {v}" for k, v in d.items()]
        return "\n".join(lines)


def invariant_report(
    f: Factorization, external_signature: Optional[int] = None
) -> InvariantReport:
    ok, _ = f.verify_homological()
    m = mu(f)
    euler = euler_characteristic(f)
    b1 = h1_total_space(f).free_rank if f.base_genus == 0 else None
    if b1 is None:
        raise SchemaError("full reports implemented for base genus 0")
    b2 = euler - 2 + 2 * b1
    sign, prov = signature(f, external_signature)
    lam = None
    c1sq = None
    liu_status = "lambda unknown"
    if sign is not None:
        lam = Fraction(sign + m, 4)
        if lam.denominator != 1:
            raise SchemaError(f"non-integer hodge pairing {lam}")
        c1sq = 2 * euler + 3 * sign
        bound = Fraction(4 * f.fiber_genus - 5, 6)
        liu_status = f"{lam} > {bound}: {'pass' if lam > bound else 'FAIL'}"
    szp = None
    if f.fiber_genus == 1 and prov == "computed" and not all(
        f.curve(n).separating for n in f.word.curves_used()
    ):
        from .metaplectic import szpiro_check

        rep = szpiro_check(f.word)
        szp = {
            "n": rep.n,
            "sum_exponents": rep.sum_exponents,
            "syllables": rep.syllables,
            "sigma_squared": rep.sigma_squared,
            "passes": rep.passes,
        }
    if f.word.letters:
        tor = torelli_certificate(f)
    else:
        tor = TorelliReport(ok=True, reason="empty word: certificate not applicable")
    note = "pinned sphere-base formula" if f.base_genus == 0 else "product-plus-mu extension"
    return InvariantReport(
        mu=m,
        euler=euler,
        b1=b1,
        b2=b2,
        signature=sign,
        signature_provenance=prov,
        lam=lam,
        c1_squared=c1sq,
        szpiro=szp,
        torelli_ok=tor.ok,
        torelli_reason=tor.reason,
        liu_status=liu_status,
        relation_verified=ok,
        euler_note=note,
    )
