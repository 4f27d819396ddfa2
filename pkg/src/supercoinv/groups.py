"""Construction and validation of the reflection groups G(m, p, n).

G(m, p, n), for p | m, is the group of n x n monomial matrices whose nonzero
entries are m-th roots of unity with the product of the entries an (m/p)-th
root of unity.  This module builds the standard explicit data attached to
such a group over Q:

* basic invariants f_1..f_n (power sums in x^m, plus (x_1...x_n)^{m/p});
* the Vandermondian Delta = prod_{i<j}(x_j^m - x_i^m) (x_1...x_n)^{m/p-1}
  and the co-Vandermondian Delta*;
* the generalized exterior derivatives d_1..d_r and their co-exponents;
* the group elements as signed permutation matrices when m <= 2 (for m > 2
  the entries are not rational and the enumeration is unsupported).

Cyclic groups are normalized: (m, p, 1) is built as (m/p, 1, 1).

Scalar normalizations follow the literal closed forms (integer coefficients,
no constants); downstream checks only ever compare spans or proportionality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial

from .superpoly import Operator, SuperPoly, partial_operator


class UnsupportedGroupError(ValueError):
    """Requested group data needs irrational matrix entries."""


@dataclass(frozen=True)
class GroupSpec:
    """Validated parameter triple (m, p, n) with derived numeric invariants."""

    m: int
    p: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.p < 1 or self.n < 1:
            raise ValueError("m, p, n must be positive")
        if self.m % self.p:
            raise ValueError(f"p={self.p} does not divide m={self.m}")

    @staticmethod
    def create(m: int, p: int, n: int) -> "GroupSpec":
        """Validate and normalize; cyclic (m, p, 1) becomes (m/p, 1, 1)."""
        if m < 1 or p < 1 or n < 1:
            raise ValueError("m, p, n must be positive")
        if m % p:
            raise ValueError(f"p={p} does not divide m={m}")
        if n == 1 and p > 1:
            m, p = m // p, 1
        return GroupSpec(m, p, n)

    @property
    def order(self) -> int:
        return self.m**self.n * factorial(self.n) // self.p

    @property
    def rank(self) -> int:
        """Dimension of V module the fixed space; n except n-1 for S_n."""
        return self.n - 1 if self.m == 1 else self.n

    @property
    def degrees(self) -> tuple[int, ...]:
        """Degrees of the basic invariants f_1..f_n."""
        if self.m == 1:
            return tuple(range(1, self.n + 1))
        head = tuple(self.m * i for i in range(1, self.n))
        last = self.n * self.m // self.p
        return head + (last,)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    @property
    def coexponents(self) -> tuple[int, ...]:
        """Co-exponents e*_1..e*_r, aligned with the operators d_1..d_r."""
        m, p, n = self.m, self.p, self.n
        if m == 1:
            return tuple(range(1, n))
        head = tuple((i - 1) * m + 1 for i in range(1, n + 1))
        if p == m:
            return head[: n - 1] + ((n - 1) * (m - 1),)
        return head

    @property
    def degree_of_vandermondian(self) -> int:
        return self.m * comb(self.n, 2) + self.n * (self.m // self.p - 1)

    @property
    def degree_of_covandermondian(self) -> int:
        m, p, n = self.m, self.p, self.n
        if m == 1 or p == m:
            return m * comb(n, 2)
        return m * comb(n, 2) + n

    @property
    def hyperplane_count(self) -> int:
        """Reflecting hyperplanes counted directly: m*C(n,2) of the form
        a x_i = x_j, plus the n coordinate hyperplanes when m/p > 1."""
        return self.m * comb(self.n, 2) + (self.n if self.m // self.p > 1 else 0)

    @property
    def is_real(self) -> bool:
        return self.m <= 2

    def label(self) -> str:
        m, p, n = self.m, self.p, self.n
        if m == 1:
            return f"S_{n}"
        if (m, p) == (2, 1):
            return f"B_{n}"
        if (m, p) == (2, 2):
            return f"D_{n}"
        return f"G({m},{p},{n})"


class GroupData:
    """All explicit polynomial/operator data attached to a GroupSpec."""

    def __init__(
        self,
        spec: GroupSpec,
        basic_invariants: list[SuperPoly],
        vandermondian: SuperPoly,
        covandermondian: SuperPoly,
        ext_derivatives: list[Operator],
    ):
        self.spec = spec
        self.basic_invariants = basic_invariants
        self.vandermondian = vandermondian
        self.covandermondian = covandermondian
        self.ext_derivatives = ext_derivatives
        self.exterior_d = Operator.exterior_derivative(spec.n)
        self.exterior_d_adjoint = self.exterior_d.adjoint()
        self._generators: list[SuperPoly] | None = None
        self._generator_ops: list[Operator] | None = None

    @property
    def n(self) -> int:
        return self.spec.n

    def ideal_generators(self) -> list[SuperPoly]:
        """f_1..f_n, d f_1..d f_n: generators of the super coinvariant ideal."""
        if self._generators is None:
            d = self.exterior_d
            self._generators = list(self.basic_invariants) + [
                d.apply(f) for f in self.basic_invariants
            ]
        return self._generators

    def harmonic_generator_operators(self) -> list[Operator]:
        """The differentiation operators whose common kernel is the harmonics."""
        if self._generator_ops is None:
            self._generator_ops = [partial_operator(g) for g in self.ideal_generators()]
        return self._generator_ops

    def orlik_solomon_operators(self) -> list[Operator]:
        """All n equivariant derivative operators, including the zero-co-exponent
        one dropped for S_n (it is sum_j theta_j and acts as 0 on harmonics)."""
        if self.spec.m == 1:
            return [Operator.power_exterior_derivative(self.n, 0)] + list(
                self.ext_derivatives
            )
        return list(self.ext_derivatives)


def _vandermonde_in_powers(n: int, m: int) -> SuperPoly:
    """prod_{1 <= i < j <= n} (x_j^m - x_i^m)."""
    out = SuperPoly.one(n)
    for i, j in combinations(range(1, n + 1), 2):
        out = out * (SuperPoly.x(n, j, m) - SuperPoly.x(n, i, m))
    return out


def _product_of_all_x(n: int, power: int) -> SuperPoly:
    return SuperPoly.monomial(n, (power,) * n)


def _power_sum(n: int, k: int) -> SuperPoly:
    out = SuperPoly.zero(n)
    for j in range(1, n + 1):
        out = out + SuperPoly.x(n, j, k)
    return out


@lru_cache(maxsize=None)
def build_group(m: int, p: int, n: int) -> GroupData:
    """Construct the full GroupData for G(m, p, n)."""
    spec = GroupSpec.create(m, p, n)
    m, p, n = spec.m, spec.p, spec.n

    if m == 1:
        invariants = [_power_sum(n, i) for i in range(1, n + 1)]
    else:
        invariants = [_power_sum(n, m * i) for i in range(1, n)]
        if p == 1:
            invariants.append(_power_sum(n, m * n))
        else:
            invariants.append(_product_of_all_x(n, m // p))

    vmd = _vandermonde_in_powers(n, m) * _product_of_all_x(n, m // p - 1)
    if m == 1 or p == m:
        covmd = _vandermonde_in_powers(n, m)
    else:
        covmd = _vandermonde_in_powers(n, m) * _product_of_all_x(n, 1)

    if m == 1:
        ops = [Operator.power_exterior_derivative(n, i) for i in range(1, n)]
    else:
        ops = [
            Operator.power_exterior_derivative(n, (i - 1) * m + 1)
            for i in range(1, n)
        ]
        if p == m and n >= 2:
            exps = []
            for j in range(n):
                exp = [m - 1] * n
                exp[j] = 0
                exps.append(tuple(exp))
            ops.append(Operator.theta_weighted_derivative(n, exps))
        else:
            ops.append(Operator.power_exterior_derivative(n, (n - 1) * m + 1))

    return GroupData(spec, invariants, vmd, covmd, ops)


def validate_jacobian(gd: GroupData) -> bool:
    """Saito criterion: det(d f_i / d x_j) is a nonzero multiple of Delta."""
    n = gd.n
    grid = [
        [f.x_derivative(tuple(1 if v == j else 0 for v in range(n))) for j in range(n)]
        for f in gd.basic_invariants
    ]
    det = SuperPoly.zero(n)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = SuperPoly.one(n)
        for i in range(n):
            prod = prod * grid[i][perm[i]]
            if prod.is_zero():
                break
        det = det + sign * prod
    ratio = det.scalar_ratio(gd.vandermondian)
    return ratio is not None and ratio != 0


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def validate_covandermondian(gd: GroupData, probe_cap: int = 600) -> bool:
    """Check d_1 ... d_n = c * (d_{Delta*} theta_1...theta_n) on probes.

    The composition of all n Orlik-Solomon operators applied to a degree
    deg(Delta*) polynomial must agree with d_{Delta*} applied to it, times the
    volume form, with one global nonzero scalar across all probes.  For S_n
    the composition includes the dropped zero-co-exponent operator.
    """
    spec = gd.spec
    n = spec.n
    ops = gd.orlik_solomon_operators()
    deg = spec.degree_of_covandermondian
    co_op = partial_operator(gd.covandermondian)
    volume = tuple(range(1, n + 1))

    probes = list(_monomials_of_degree(n, deg))
    if len(probes) > probe_cap:
        step = len(probes) // probe_cap + 1
        sampled = probes[::step]
        sampled.extend(k[0] for k in gd.covandermondian.terms)
        probes = sorted(set(sampled))

    ratio = None
    saw_nonzero = False
    for alpha in probes:
        f = SuperPoly.monomial(n, alpha)
        lhs = f
        for op in reversed(ops):
            lhs = op.apply(lhs)
            if lhs.is_zero():
                break
        rhs_scalar = co_op.apply(f).constant_term()
        if lhs.is_zero() and rhs_scalar == 0:
            continue
        saw_nonzero = True
        lhs_scalar = lhs.terms.get(((0,) * n, volume))
        if lhs_scalar is None or len(lhs.terms) != 1:
            return False
        if rhs_scalar == 0:
            return False
        r = lhs_scalar / rhs_scalar
        if ratio is None:
            ratio = r
        elif ratio != r:
            return False
    return saw_nonzero and ratio is not None and ratio != 0


def group_matrices(spec: GroupSpec) -> list[tuple[tuple[int, ...], ...]]:
    """All elements of G(m, p, n) as integer matrices; only m <= 2 is rational.

    The matrix for (perm, signs) has entry signs[j] in row perm[j], column j.
    """
    if spec.m > 2:
        raise UnsupportedGroupError(
            f"group elements of G({spec.m},{spec.p},{spec.n}) are not rational"
        )
    out = []
    for perm, signs in group_elements(spec):
        mat = [[0] * spec.n for _ in range(spec.n)]
        for j in range(spec.n):
            mat[perm[j] - 1][j] = signs[j]
        out.append(tuple(tuple(row) for row in mat))
    return out


def group_elements(spec: GroupSpec) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(perm, signs) pairs for m <= 2; perm[j-1] is the image of j, 1-indexed."""
    if spec.m > 2:
        raise UnsupportedGroupError(
            f"group elements of G({spec.m},{spec.p},{spec.n}) are not rational"
        )
    n = spec.n
    sign_choices = (
        [(1,) * n]
        if spec.m == 1
        else [s for s in product((1, -1), repeat=n)]
    )
    if spec.m == 2 and spec.p == 2:
        sign_choices = [s for s in sign_choices if s.count(-1) % 2 == 0]
    out = []
    for perm in sorted(permutations(range(1, n + 1))):
        for signs in sign_choices:
            out.append((perm, signs))
    return out


def element_determinant(perm, signs) -> int:
    det = _perm_sign(tuple(p - 1 for p in perm))
    for s in signs:
        det *= s
    return det


def group_info(spec: GroupSpec) -> dict:
    """Summary of the explicit data, JSON-serializable."""
    gd = build_group(spec.m, spec.p, spec.n)
    return {
        "m": spec.m,
        "p": spec.p,
        "n": spec.n,
        "label": spec.label(),
        "order": spec.order,
        "rank": spec.rank,
        "degrees": list(spec.degrees),
        "exponents": list(spec.exponents),
        "coexponents": list(spec.coexponents),
        "degree_of_vandermondian": spec.degree_of_vandermondian,
        "degree_of_covandermondian": spec.degree_of_covandermondian,
        "basic_invariants": [f.to_string() for f in gd.basic_invariants],
        "vandermondian": gd.vandermondian.to_string(),
        "covandermondian": gd.covandermondian.to_string(),
    }
