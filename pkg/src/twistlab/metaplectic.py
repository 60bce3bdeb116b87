"""The metaplectic group ~SL(2,Z) via the Maslov-index cocycle.

Elements are pairs (M, n) with M in SL(2,Z) subject to the membership
predicate: c = 0 forces n even with sign(a) = (-1)^(n/2), c != 0 forces n odd
with sign(c) = (-1)^((n+1)/2).  Multiplication is
(g1, n1)(g2, n2) = (g1 g2, n1 + n2 + tau(l0, g1 l0, g1 g2 l0)) with the
reference Lagrangian l0 = span(p).

Lagrangian lines are primitive integer vectors up to sign; every order and
betweenness computation is an exact sign of a 2x2 determinant.  The Maslov
index is computed both by the cyclic-order rule and as the signature of the
associated quadratic form; the two routes are cross-checked on every call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import InvalidElement, InvalidPoint, NotCentral, NotPositive, SchemaError

Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY: Mat2 = ((1, 0), (0, 1))
A_MATRIX: Mat2 = ((1, 1), (0, 1))       # image of t_a
B_MATRIX: Mat2 = ((1, 0), (-1, 1))      # image of t_b
J_MATRIX: Mat2 = ((0, 1), (-1, 0))


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def mat_inv(x: Mat2) -> Mat2:
    if x[0][0] * x[1][1] - x[0][1] * x[1][0] != 1:
        raise InvalidElement("matrix not in SL(2,Z)")
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


def mat_apply(x: Mat2, v: Tuple[int, int]) -> Tuple[int, int]:
    return (x[0][0] * v[0] + x[0][1] * v[1], x[1][0] * v[0] + x[1][1] * v[1])


@dataclass(frozen=True)
class LagrangianLine:
    """Line through the origin, a primitive vector up to overall sign.

    Normalized so the second coordinate is positive, or zero with the first
    positive; the angle theta then lies in [0, pi)."""

    vector: Tuple[int, int]

    def __post_init__(self):
        x, y = (int(v) for v in self.vector)
        if x == 0 and y == 0:
            raise SchemaError("zero vector is not a line")
        g = math.gcd(abs(x), abs(y))
        x, y = x // g, y // g
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        object.__setattr__(self, "vector", (x, y))

    def apply(self, m: Mat2) -> "LagrangianLine":
        return LagrangianLine(mat_apply(m, self.vector))

    def angle_lt(self, other: "LagrangianLine") -> bool:
        """theta(self) < theta(other), exactly."""
        a, b = self.vector, other.vector
        return a[0] * b[1] - a[1] * b[0] > 0

    def fraction_of_pi(self) -> Optional[Fraction]:
        """theta as an exact multiple of pi when standard, else None."""
        table = {(1, 0): Fraction(0), (1, 1): Fraction(1, 4),
                 (0, 1): Fraction(1, 2), (-1, 1): Fraction(3, 4)}
        return table.get(self.vector)

    def angle_float(self) -> float:
        x, y = self.vector
        t = math.atan2(y, x)
        return t if t >= 0 else t + math.pi


LINE_P = LagrangianLine((1, 0))
LINE_Q = LagrangianLine((0, 1))


def _maslov_cyclic(l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine) -> int:
    if l1 == l2 or l2 == l3 or l1 == l3:
        return 0
    # +1 iff l2 lies strictly between l1 and l3 in the counterclockwise
    # cyclic order on theta in [0, pi)
    a12 = l1.angle_lt(l2)
    a13 = l1.angle_lt(l3)
    a23 = l2.angle_lt(l3)
    if a13:
        between = a12 and a23
    else:
        between = a12 or a23
    return 1 if between else -1


def _maslov_signature(l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine) -> int:
    """Signature of Q(x1+x2+x3) = w(x1,x2) + w(x2,x3) + w(x3,x1) on the three
    lines, by exact congruence diagonalization."""
    def w(u, v):
        return u[0] * v[1] - u[1] * v[0]

    v1, v2, v3 = l1.vector, l2.vector, l3.vector
    h = Fraction(1, 2)
    m = [
        [Fraction(0), h * w(v1, v2), h * w(v3, v1)],
        [h * w(v1, v2), Fraction(0), h * w(v2, v3)],
        [h * w(v3, v1), h * w(v2, v3), Fraction(0)],
    ]
    basis = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]

    def form(u, v):
        return sum(u[i] * m[i][j] * v[j] for i in range(3) for j in range(3))

    sig = 0
    vecs = [row[:] for row in basis]
    while vecs:
        d = next((i for i, u in enumerate(vecs) if form(u, u) != 0), None)
        if d is None:
            # isotropic remainder: pair off hyperbolic planes (signature 0)
            pair = None
            for i in range(len(vecs)):
                for j in range(i + 1, len(vecs)):
                    if form(vecs[i], vecs[j]) != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # radical only
            i, j = pair
            u = [a + b for a, b in zip(vecs[i], vecs[j])]
            if form(u, u) == 0:
                break
            vecs.append(u)
            continue
        u = vecs.pop(d)
        q = form(u, u)
        sig += 1 if q > 0 else -1
        vecs = [
            [a - form(u, v) / q * b for a, b in zip(v, u)] for v in vecs
        ]
    return sig


def maslov_index(l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine) -> int:
    """Maslov index of a triple of lines, in {-1, 0, 1}.

    Computed by the cyclic-order rule and cross-checked against the signature
    of the quadratic form on every call."""
    cyc = _maslov_cyclic(l1, l2, l3)
    sig = _maslov_signature(l1, l2, l3)
    if cyc != sig:
        raise SchemaError(
            f"maslov cross-check failed: cyclic {cyc} != signature {sig}"
        )
    return cyc


def cocycle(g: Mat2, h: Mat2, line: LagrangianLine = LINE_P) -> int:
    """tau_l(g, h) = tau(l, g l, g h l)."""
    return maslov_index(line, line.apply(g), line.apply(mat_mul(g, h)))


@dataclass(frozen=True)
class MetaElement:
    matrix: Mat2
    n: int

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1:
            raise InvalidElement("matrix not in SL(2,Z)")

    def is_valid(self) -> bool:
        a = self.matrix[0][0]
        c = self.matrix[1][0]
        if c == 0:
            return self.n % 2 == 0 and _sign(a) == (-1) ** ((self.n // 2) % 2)
        return self.n % 2 == 1 and _sign(c) == (-1) ** (((self.n + 1) // 2) % 2)

    def __str__(self):
        return f"({self.matrix}, {self.n})"


def _sign(x: int) -> int:
    return 1 if x > 0 else (-1 if x < 0 else 0)


def validate(x: MetaElement) -> bool:
    return x.is_valid()


def multiply(x: MetaElement, y: MetaElement) -> MetaElement:
    if not x.is_valid() or not y.is_valid():
        raise InvalidElement("operand fails the membership predicate")
    z = MetaElement(mat_mul(x.matrix, y.matrix), x.n + y.n + cocycle(x.matrix, y.matrix))
    return z


def meta_identity() -> MetaElement:
    return MetaElement(IDENTITY, 0)


def meta_inverse(x: MetaElement) -> MetaElement:
    gi = mat_inv(x.matrix)
    return MetaElement(gi, -x.n - cocycle(x.matrix, gi))


def meta_power(x: MetaElement, e: int) -> MetaElement:
    if e < 0:
        return meta_power(meta_inverse(x), -e)
    acc = meta_identity()
    for _ in range(e):
        acc = multiply(acc, x)
    return acc


def lift_generators(k: int = 0) -> Tuple[MetaElement, MetaElement, MetaElement]:
    """(A~_k, B~_k, J~) with A~_k = (A, 4k), J~ = (J, 1) and
    B~_k = J~ A~_k J~^-1 = (B, 4k + 1)."""
    a_t = MetaElement(A_MATRIX, 4 * k)
    j_t = MetaElement(J_MATRIX, 1)
    b_t = multiply(multiply(j_t, a_t), meta_inverse(j_t))
    assert b_t == MetaElement(B_MATRIX, 4 * k + 1)
    return a_t, b_t, j_t


def canonical_lift(m: Mat2) -> MetaElement:
    """Some valid lift of the matrix (unique up to the center (I, 4k))."""
    for n in (0, 1, 2, 3, -1, -2):
        x = MetaElement(m, n)
        if x.is_valid():
            return x
    raise InvalidElement("no valid lift found")  # unreachable


def meta_twist(homology_class: Sequence[int]) -> MetaElement:
    """Canonical metaplectic lift of the twist about a primitive genus-1
    class: conjugate A~_0 by any lift of a matrix taking (1,0) to the class.

    Well defined because the central ambiguity of the conjugator cancels."""
    p, q = (int(v) for v in homology_class)
    if math.gcd(abs(p), abs(q)) != 1:
        raise SchemaError("genus-1 twist class must be primitive")
    # second column (r, s) with p s - q r = 1, from s0 p + t0 q = 1
    _, s0, t0 = _ext_gcd(p, q)
    r, s = -t0, s0
    w: Mat2 = ((p, r), (q, s))
    assert p * s - q * r == 1
    phi = canonical_lift(w)
    a0 = MetaElement(A_MATRIX, 0)
    return multiply(multiply(phi, a0), meta_inverse(phi))


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def evaluate_meta_word(word) -> MetaElement:
    """Ordered product of the lifted letters of a genus-1 twist word;
    t_a maps to A~_0 = (A, 0) and t_b to B~_0 = (B, 1), general primitive
    classes to their canonical conjugate lift; conjugators expand
    recursively."""
    if word.genus != 1:
        raise SchemaError("metaplectic evaluation needs a genus-1 word")
    acc = meta_identity()
    for letter in word.letters:
        base = meta_twist(letter.curve.homology)
        m = meta_power(base, letter.exponent)
        if letter.conjugator is not None:
            c = evaluate_meta_word(letter.conjugator)
            m = multiply(multiply(c, m), meta_inverse(c))
        acc = multiply(acc, m)
    return acc


def boundary_multiplicity(word) -> Union[int, MetaElement]:
    """n when the word evaluates to the central element (I, 4n); otherwise
    the residual element (a normal outcome, not a fault)."""
    from .words import is_positive

    if not is_positive(word):
        raise NotPositive("boundary multiplicity requires a positive word")
    val = evaluate_meta_word(word)
    if val.matrix == IDENTITY and val.n % 4 == 0:
        return val.n // 4
    return val


@dataclass(frozen=True)
class SzpiroReport:
    n: int
    sum_exponents: int
    syllables: int
    sigma_squared: int
    sum_is_12n: bool
    syllables_exceed_2n: bool

    @property
    def passes(self) -> bool:
        return self.sum_is_12n and self.syllables_exceed_2n


def szpiro_check(word) -> SzpiroReport:
    """Checks sum(n_i) = 12 n and m > 2 n for a positive relation evaluating
    to the n-th power of the boundary twist; the section self-intersection is
    -n."""
    res = boundary_multiplicity(word)
    if isinstance(res, MetaElement):
        raise NotCentral(res)
    n = res
    total = word.total_exponent()
    syllables = len(word.letters)
    return SzpiroReport(
        n=n,
        sum_exponents=total,
        syllables=syllables,
        sigma_squared=-n,
        sum_is_12n=(total == 12 * n),
        syllables_exceed_2n=(syllables > 2 * n),
    )


# ---------------------------------------------------------------------------
# the covered Lagrangian Grassmannian


@dataclass(frozen=True)
class TildeLambdaPoint:
    """Point (line, k) of the universal cover; k has the parity of
    1 + dim(line n span(p)).

    The real coordinate is theta~ = theta(line) - ceil(k/2) pi.  (The naive
    linear-in-k version theta - k pi/2 agrees on even k and on all the pinned
    calibration data but identifies the distinct points (p, 0) and (q, 1), so
    it is not injective; the parity constraint forces the ceiling.)  One unit
    of the central generator (I, 4) translates theta~ by -2 pi and the deck
    step k -> k + 2 by -pi."""

    line: LagrangianLine
    k: int

    def __post_init__(self):
        if not self.is_valid():
            raise InvalidPoint(f"parity violation at {self}")

    def is_valid(self) -> bool:
        dim = 1 if self.line == LINE_P else 0
        return self.k % 2 == (1 + dim) % 2

    def pi_steps(self) -> int:
        return (self.k + 1) // 2  # ceil(k / 2)

    def theta_fraction(self) -> Optional[Fraction]:
        """theta~ as an exact multiple of pi, when the line is at a standard
        angle."""
        f = self.line.fraction_of_pi()
        if f is None:
            return None
        return f - self.pi_steps()

    def theta_float(self) -> float:
        return self.line.angle_float() - self.pi_steps() * math.pi


def act_tilde_lambda(x: MetaElement, pt: TildeLambdaPoint) -> TildeLambdaPoint:
    """(g, n) . (l, k) = (g l, n + k + tau(l0, g l0, g l))."""
    if not x.is_valid():
        raise InvalidElement(str(x))
    new_line = pt.line.apply(x.matrix)
    k = x.n + pt.k + maslov_index(LINE_P, LINE_P.apply(x.matrix), new_line)
    return TildeLambdaPoint(new_line, k)


@dataclass(frozen=True)
class Displacement:
    """theta~ difference.

    ``pi_fraction`` is an exact multiple of pi whenever both lines sit at
    standard angles (multiples of pi/4); ``cmp_half_pi`` compares the exact
    value against any multiple of pi/2 without ever touching floats;
    ``float_value`` is an IEEE-double approximation for display only."""

    line_before: LagrangianLine
    line_after: LagrangianLine
    pi_step_diff: int  # ceil(k_after/2) - ceil(k_before/2)

    def pi_fraction(self) -> Optional[Fraction]:
        f1 = self.line_before.fraction_of_pi()
        f2 = self.line_after.fraction_of_pi()
        if f1 is None or f2 is None:
            return None
        return f2 - f1 - self.pi_step_diff

    def float_value(self) -> float:
        return (
            self.line_after.angle_float()
            - self.line_before.angle_float()
            - self.pi_step_diff * math.pi
        )

    def cmp_half_pi(self, m: int) -> int:
        """Exact sign of (displacement - m pi/2); never uses floats."""
        # displacement = dtheta - pi_step_diff * pi with dtheta in (-pi, pi)
        t = m + 2 * self.pi_step_diff  # compare dtheta against t * pi/2
        la, lb = self.line_before, self.line_after
        if lb == la:
            dtheta_cmp0 = 0
        elif la.angle_lt(lb):
            dtheta_cmp0 = 1
        else:
            dtheta_cmp0 = -1
        if t >= 2:
            return -1
        if t <= -2:
            return 1
        if t == 0:
            return dtheta_cmp0
        if t == 1:
            # dtheta vs pi/2: rotate la by +pi/2 (wraps when theta >= pi/2)
            if la.vector[0] <= 0:
                return -1  # theta(la) >= pi/2 so theta(lb) < theta(la) + pi/2
            rot = LagrangianLine((-la.vector[1], la.vector[0]))
            if lb == rot:
                return 0
            return 1 if rot.angle_lt(lb) else -1
        # t == -1: dtheta + pi/2 has the sign of theta(lb) + pi/2 - theta(la)
        if lb.vector[0] <= 0:
            return 1  # theta(lb) + pi/2 wraps past pi, above any theta(la)
        rot = LagrangianLine((-lb.vector[1], lb.vector[0]))
        if la == rot:
            return 0
        return 1 if la.angle_lt(rot) else -1

    def in_interval_closed(self, lo_halves: int, hi_halves: int) -> bool:
        """displacement in [lo pi/2, hi pi/2], exactly."""
        return self.cmp_half_pi(lo_halves) >= 0 and self.cmp_half_pi(hi_halves) <= 0


def displacement(x: MetaElement, pt: TildeLambdaPoint) -> Displacement:
    after = act_tilde_lambda(x, pt)
    return Displacement(
        line_before=pt.line,
        line_after=after.line,
        pi_step_diff=after.pi_steps() - pt.pi_steps(),
    )


# ---------------------------------------------------------------------------
# positivity search (no positive word in conjugates of t_a is the identity)
#
# Bulk state-space work uses a raw-tuple fast path with the cyclic-order
# Maslov rule only; its agreement with the signature route is property-tested
# exhaustively elsewhere.


def _fast_tau(g: Mat2, h: Mat2) -> int:
    gh = mat_mul(g, h)
    l1 = (1, 0)
    l2 = _norm_line(g[0][0], g[1][0])
    l3 = _norm_line(gh[0][0], gh[1][0])
    if l1 == l2 or l2 == l3 or l1 == l3:
        return 0
    a12 = l1[0] * l2[1] - l1[1] * l2[0] > 0
    a13 = l1[0] * l3[1] - l1[1] * l3[0] > 0
    a23 = l2[0] * l3[1] - l2[1] * l3[0] > 0
    between = (a12 and a23) if a13 else (a12 or a23)
    return 1 if between else -1


def _norm_line(x: int, y: int) -> Tuple[int, int]:
    g = math.gcd(abs(x), abs(y))
    x, y = x // g, y // g
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return (x, y)


def _fast_mul(x, y):
    g = mat_mul(x[0], y[0])
    return (g, x[1] + y[1] + _fast_tau(x[0], y[0]))


def _fast_inv(x):
    gi = mat_inv(x[0])
    return (gi, -x[1] - _fast_tau(x[0], gi))


def conjugates_of_t_a(max_conjugator_length: int = 2) -> Tuple[MetaElement, ...]:
    """Distinct values phi (A~_0) phi^-1 over reduced conjugator words of the
    given maximum length in t_a, t_b and inverses."""
    a_t = (A_MATRIX, 0)
    b_t = (B_MATRIX, 1)
    gens = {1: a_t, -1: _fast_inv(a_t), 2: b_t, -2: _fast_inv(b_t)}
    words = [()]
    level = [()]
    for _ in range(max_conjugator_length):
        nxt = []
        for w in level:
            for s in (1, -1, 2, -2):
                if not w or w[-1] != -s:
                    nxt.append(w + (s,))
        words.extend(nxt)
        level = nxt
    out = set()
    for w in words:
        phi = (IDENTITY, 0)
        for s in w:
            phi = _fast_mul(phi, gens[s])
        out.add(_fast_mul(_fast_mul(phi, a_t), _fast_inv(phi)))
    return tuple(
        MetaElement(m, n) for m, n in sorted(out)
    )


def search_positive_identity(
    max_total_exponent: int = 12, max_conjugator_length: int = 2
) -> Optional[Tuple[MetaElement, ...]]:
    """Exhaustive reachability search for (I, 0) among positive products of
    conjugates of t_a with total exponent bounded as given.

    Dedups states (two words with equal value have identical futures) and
    splits the bound in half: a product of length L <= 2D equals the identity
    iff some prefix value u of length <= D has u^-1 reachable in <= D steps.
    Returns a witness pair of values or None.
    """
    conjs = [(e.matrix, e.n) for e in conjugates_of_t_a(max_conjugator_length)]
    depth = (max_total_exponent + 1) // 2
    start = (IDENTITY, 0)
    dist = {start: 0}
    frontier = [start]
    for d in range(1, depth + 1):
        nxt = []
        for st in frontier:
            for c in conjs:
                v = _fast_mul(st, c)
                if v not in dist:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    for st, d in dist.items():
        inv = _fast_inv(st)
        other = dist.get(inv)
        if other is not None and 1 <= d + other <= max_total_exponent:
            return (MetaElement(*st), MetaElement(*inv))
    return None


# ---------------------------------------------------------------------------
# compact word syntax: "(a b)^6", "a^3 b^-1", "[w] a [w]^-1"


def parse_meta_word(text: str):
    """Parse the compact CLI syntax into a genus-1 TwistWord.

    Atoms are a, b; parentheses group with integer powers; the pattern
    [w] atom^k [w]^-1 folds into a single conjugated letter."""
    from .surfaces import Curve
    from .words import TwistLetter, TwistWord

    curve_a = Curve("a", (1, 0), word=(1,))
    curve_b = Curve("b", (0, 1), word=(2,))

    tokens = _tokenize(text)
    pos = 0

    def parse_seq(stop=None):
        nonlocal pos
        letters: List[TwistLetter] = []
        while pos < len(tokens) and tokens[pos] != stop:
            tok = tokens[pos]
            if tok == "(":
                pos += 1
                inner = parse_seq(")")
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise SchemaError("unbalanced parenthesis")
                pos += 1
                power = _maybe_power()
                block = inner * abs(power)
                if power < 0:
                    block = [l.inverse() for l in reversed(block)]
                letters.extend(block)
            elif tok == "[":
                pos += 1
                conj = parse_seq("]")
                if pos >= len(tokens) or tokens[pos] != "]":
                    raise SchemaError("unbalanced bracket")
                pos += 1
                if pos < len(tokens) and tokens[pos].startswith("^"):
                    raise SchemaError("conjugator bracket cannot carry a power here")
                core = parse_atom()
                # expect [w]^-1
                if not (
                    pos < len(tokens)
                    and tokens[pos] == "["
                ):
                    raise SchemaError("expected closing [w]^-1 after conjugated letter")
                pos += 1
                conj2 = parse_seq("]")
                if pos >= len(tokens) or tokens[pos] != "]":
                    raise SchemaError("unbalanced bracket")
                pos += 1
                p = _maybe_power()
                if p != -1:
                    raise SchemaError("conjugation must close with [w]^-1")
                if [(l.curve.name, l.exponent) for l in conj2] != [
                    (l.curve.name, l.exponent) for l in conj
                ]:
                    raise SchemaError("mismatched conjugator brackets")
                phi = TwistWord(1, tuple(conj))
                letters.append(
                    TwistLetter(core.curve, core.exponent, conjugator=phi)
                )
            elif tok in ("a", "b"):
                letters.append(parse_atom())
            else:
                raise SchemaError(f"unexpected token {tok!r}")
        return letters

    def parse_atom() -> TwistLetter:
        nonlocal pos
        tok = tokens[pos]
        if tok not in ("a", "b"):
            raise SchemaError(f"expected a or b, got {tok!r}")
        pos += 1
        power = _maybe_power()
        curve = curve_a if tok == "a" else curve_b
        return TwistLetter(curve, power)

    def _maybe_power() -> int:
        nonlocal pos
        if pos < len(tokens) and tokens[pos].startswith("^"):
            val = int(tokens[pos][1:])
            pos += 1
            if val == 0:
                raise SchemaError("zero power")
            return val
        return 1

    letters = parse_seq()
    if pos != len(tokens):
        raise SchemaError("trailing tokens")
    from .words import TwistWord

    return TwistWord(1, tuple(letters))


def _tokenize(text: str) -> List[str]:
    out: List[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()[]ab":
            out.append(ch)
            i += 1
        elif ch == "^":
            j = i + 1
            if j < len(text) and text[j] in "+-":
                j += 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise SchemaError("dangling ^")
            out.append(text[i:j])
            i = j
        else:
            raise SchemaError(f"bad character {ch!r}")
    return out
