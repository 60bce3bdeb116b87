"""Finite presentations: abelianization, quotients, and index-2 covers.

Words are tuples of nonzero signed integers: +k is the k-th generator
(1-based), -k its inverse.  Relators are stored freely reduced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, SchemaError, ZeroCharacter
from .exact import IntMatrix, smith_normal_form

Word = Tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def concat(*words: Sequence[int]) -> Word:
    out: List[int] = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def canonical_rotation(word: Sequence[int]) -> Word:
    """Lexicographically least rotation, the chosen representative of a
    cyclic word."""
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def exponent_vector(word: Sequence[int], n_generators: int) -> tuple:
    v = [0] * n_generators
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def parse_word(tokens: Sequence[str], generators: Sequence[str]) -> Word:
    """Tokens like "a1" or "b2^-1" to a signed index word."""
    index = {g: i + 1 for i, g in enumerate(generators)}
    out = []
    for tok in tokens:
        name, _, exp = tok.partition("^")
        if name not in index:
            raise SchemaError(f"unknown generator {name!r}")
        e = int(exp) if exp else 1
        if e == 0:
            continue
        out.extend([index[name] if e > 0 else -index[name]] * abs(e))
    return tuple(out)


def format_word(word: Sequence[int], generators: Sequence[str]) -> list:
    toks = []
    for x in word:
        name = generators[abs(x) - 1]
        toks.append(name if x > 0 else f"{name}^-1")
    return toks


@dataclass(frozen=True)
class FinitePresentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise SchemaError("duplicate generator names")
        reduced = tuple(free_reduce(r) for r in self.relators)
        for r in reduced:
            for x in r:
                if x == 0 or abs(x) > n:
                    raise SchemaError(f"relator letter {x} out of range")
        object.__setattr__(self, "relators", reduced)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def relator_matrix(self) -> IntMatrix:
        """Exponent-sum matrix, one row per relator."""
        return IntMatrix([exponent_vector(r, self.rank) for r in self.relators])


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group: Z^free_rank + sum Z/d, divisor chain."""

    free_rank: int
    torsion: Tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise SchemaError("torsion is not a divisor chain")
        if any(t < 2 for t in self.torsion):
            raise SchemaError("torsion entries must be >= 2")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelianize(p: FinitePresentation) -> AbelianInvariants:
    snf = smith_normal_form(p.relator_matrix())
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianInvariants(free_rank=p.rank - snf.rank, torsion=torsion)


def quotient_by_normal_closure(
    p: FinitePresentation, extra: Sequence[Sequence[int]]
) -> FinitePresentation:
    """Adjoin extra relators; the normal closure is implicit in presentation
    semantics."""
    new = tuple(free_reduce(w) for w in extra)
    return FinitePresentation(p.generators, p.relators + new)


def commutator_defect(p: FinitePresentation, word: Sequence[int]) -> tuple:
    """Image of a word in the abelianization of p, in Smith coordinates.

    The result has one entry per torsion factor (reduced into [0, d)) followed
    by one per free factor.  All zero means the word lies in the kernel of the
    abelianization map, i.e. its class is killed modulo the derived subgroup.
    """
    if not p.relators:
        return exponent_vector(word, p.rank)
    a = p.relator_matrix().transpose()  # columns span the relation lattice
    snf = smith_normal_form(a)
    y = snf.left.apply(exponent_vector(word, p.rank))
    out = []
    for i, yi in enumerate(y):
        if i < snf.rank:
            d = snf.diagonal[i]
            if d > 1:
                out.append(yi % d)
            # d == 1: coordinate dies in the quotient
        else:
            out.append(yi)
    return tuple(out)


def defect_order(p: FinitePresentation, word: Sequence[int]) -> Optional[int]:
    """Order of the word's class in the abelianization (None = infinite)."""
    if not p.relators:
        v = exponent_vector(word, p.rank)
        return 1 if all(x == 0 for x in v) else None
    a = p.relator_matrix().transpose()
    snf = smith_normal_form(a)
    y = snf.left.apply(exponent_vector(word, p.rank))
    order = 1
    for i, yi in enumerate(y):
        if i < snf.rank:
            d = snf.diagonal[i]
            r = yi % d if d > 1 else 0
            if r:
                g = d // _gcd(r, d)
                order = order * g // _gcd(order, g)
        elif yi != 0:
            return None
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# surface groups and index-2 covers


@dataclass(frozen=True)
class SurfaceGroup:
    """Fundamental group of the closed orientable surface of the given genus,
    generators a1, b1, ..., ag, bg with the single product-of-commutators
    relator."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise SchemaError("genus must be >= 1")

    @property
    def generator_names(self) -> Tuple[str, ...]:
        names = []
        for i in range(1, self.genus + 1):
            names += [f"a{i}", f"b{i}"]
        return tuple(names)

    def relator(self) -> Word:
        w: List[int] = []
        for i in range(self.genus):
            a, b = 2 * i + 1, 2 * i + 2
            w += [a, b, -a, -b]
        return tuple(w)

    def presentation(self) -> FinitePresentation:
        return FinitePresentation(self.generator_names, (self.relator(),))


@dataclass(frozen=True)
class LiftResult:
    chi_value: int
    words: Tuple[Word, ...]     # lifts written in Schreier generators
    classes: Tuple[tuple, ...]  # homology classes in the cover basis


@dataclass(frozen=True)
class DoubleCover:
    """Index-2 kernel of chi composed with abelianization, presented via
    Reidemeister-Schreier with transversal {1, t}, t the first generator with
    chi = 1.

    Schreier generators are named ``g^(0)`` / ``g^(1)`` by coset, in base
    generator order; the tree generator (coset 0, t) is dropped.  The homology
    basis is the Schreier generators in declaration order, with the quotient
    by the rewritten relators taken in Smith coordinates.
    """

    base: SurfaceGroup
    character: Tuple[int, ...]
    transversal_gen: int
    schreier_gens: Tuple[Tuple[int, int], ...]  # (coset, base generator)
    cover_presentation: FinitePresentation
    # quotient data: y = left * x, coordinates with diagonal 1 dropped
    _left: IntMatrix = field(repr=False)
    _drop: Tuple[int, ...] = field(repr=False)

    @property
    def n_schreier(self) -> int:
        return len(self.schreier_gens)

    def chi_of_word(self, word: Sequence[int]) -> int:
        return sum(self.character[abs(x) - 1] for x in word) % 2

    def rewrite(self, word: Sequence[int], start_coset: int = 0) -> Word:
        """Schreier rewriting of a closed walk based at the given coset."""
        gid = {}
        for k, (u, x) in enumerate(self.schreier_gens):
            gid[(u, x)] = k + 1
        t = self.transversal_gen
        u = start_coset
        out: List[int] = []
        for x in word:
            cx = self.character[abs(x) - 1]
            if x > 0:
                g = gid.get((u, x), 0)
                if g:
                    out.append(g)
                u ^= cx
            else:
                u ^= cx
                g = gid.get((u, -x), 0)
                if g:
                    out.append(-g)
        if u != start_coset:
            raise SchemaError("word does not define a closed walk at this coset")
        return free_reduce(out)

    def class_of(self, schreier_word: Sequence[int]) -> tuple:
        """Homology class in H1(cover) coordinates."""
        v = exponent_vector(schreier_word, self.n_schreier)
        y = self._left.apply(v)
        return tuple(y[i] for i in range(len(y)) if i not in self._drop)

    def homology_dim(self) -> int:
        return self.n_schreier - len(self._drop)

    def transfer(self, base_class: Sequence[int]) -> tuple:
        """Transfer H1(base) -> H1(cover): class of the full preimage cycle."""
        out = None
        for i, c in enumerate(base_class):
            if c == 0:
                continue
            word = (i + 1,)
            if self.character[i] == 0:
                w = concat(self.rewrite(word, 0), self.rewrite(word, 1))
            else:
                w = self.rewrite(word + word, 0)
            cls = self.class_of(w)
            term = tuple(c * x for x in cls)
            out = term if out is None else tuple(a + b for a, b in zip(out, term))
        if out is None:
            out = (0,) * self.homology_dim()
        return out

    def deck_matrix(self) -> IntMatrix:
        """Action of the deck involution on H1(cover) in quotient
        coordinates, computed from the Schreier rewriting of t * s * t^-1."""
        from .exact import inverse_unimodular

        t = self.transversal_gen
        n = self.n_schreier
        cols = []
        for (u, x) in self.schreier_gens:
            # base word of the Schreier generator: rep(u) x rep(u ^ chi(x))^-1
            rep = () if u == 0 else (t,)
            u2 = u ^ self.character[x - 1]
            rep2 = () if u2 == 0 else (t,)
            base_word = rep + (x,) + inverse_word(rep2)
            conj = free_reduce((t,) + base_word + (-t,))
            cols.append(exponent_vector(self.rewrite(conj, 0), n))
        deck_full = IntMatrix(list(zip(*cols)))  # action on Z^schreier
        keep = [i for i in range(n) if i not in self._drop]
        proj = IntMatrix([[1 if j == k else 0 for j in range(n)] for k in keep])
        section = inverse_unimodular(self._left) * proj.transpose()
        return proj * self._left * deck_full * section


def reidemeister_schreier_double_cover(
    s: SurfaceGroup, chi: Sequence[int]
) -> DoubleCover:
    chi = tuple(int(c) % 2 for c in chi)
    n = 2 * s.genus
    if len(chi) != n:
        raise DimensionMismatch("character length != 2g")
    if not any(chi):
        raise ZeroCharacter("chi = 0 gives a disconnected cover")
    t = next(i + 1 for i in range(n) if chi[i] == 1)

    gens: List[Tuple[int, int]] = []
    for u in (0, 1):
        for x in range(1, n + 1):
            if (u, x) == (0, t):
                continue
            gens.append((u, x))
    names = tuple(f"{s.generator_names[x - 1]}^({u})" for (u, x) in gens)
    gid = {ux: k + 1 for k, ux in enumerate(gens)}

    def rewrite(word, start):
        u = start
        out: List[int] = []
        for x in word:
            cx = chi[abs(x) - 1]
            if x > 0:
                g = gid.get((u, x), 0)
                if g:
                    out.append(g)
                u ^= cx
            else:
                u ^= cx
                g = gid.get((u, -x), 0)
                if g:
                    out.append(-g)
        assert u == start
        return free_reduce(out)

    r = s.relator()
    relators = (rewrite(r, 0), rewrite(r, 1))
    pres = FinitePresentation(names, relators)

    # quotient coordinates for H1(cover) = Z^N / relator lattice
    a = pres.relator_matrix().transpose()
    snf = smith_normal_form(a)
    drop = tuple(i for i in range(snf.rank) if snf.diagonal[i] == 1)
    if len(drop) != snf.rank:
        # torsion in a surface cover would signal a rewriting bug
        raise SchemaError("cover homology has torsion")

    cover = DoubleCover(
        base=s,
        character=chi,
        transversal_gen=t,
        schreier_gens=tuple(gens),
        cover_presentation=pres,
        _left=snf.left,
        _drop=drop,
    )
    inv = abelianize(pres)
    expected = 2 * (2 * s.genus - 1)
    if inv.free_rank != expected or inv.torsion:
        raise SchemaError(
            f"cover abelianization {inv} != free rank {expected}"
        )
    return cover


def lift_loop(cov: DoubleCover, word: Sequence[int]) -> LiftResult:
    """Lifts of a based loop to the double cover.

    chi(word) = 0: the two disjoint lifts (the rewriting of the word and of
    its conjugate by the nontrivial coset representative).
    chi(word) = 1: the single connected lift, the rewriting of the square.
    """
    w = free_reduce(word)
    c = cov.chi_of_word(w)
    t = cov.transversal_gen
    if c == 0:
        w0 = cov.rewrite(w, 0)
        w1 = cov.rewrite(free_reduce((t,) + w + (-t,)), 0)
        words = (w0, w1)
    else:
        words = (cov.rewrite(w + w, 0),)
    return LiftResult(
        chi_value=c,
        words=words,
        classes=tuple(cov.class_of(x) for x in words),
    )
