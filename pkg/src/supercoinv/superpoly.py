"""Sparse exact arithmetic in Q[x_1..x_n, theta_1..theta_n] and its operators.

The theta variables anticommute (theta_i theta_j = -theta_j theta_i, so
theta_i^2 = 0) and commute with the x's.  Monomials are kept in the canonical
form x^alpha theta_{i_1}...theta_{i_k} with i_1 < ... < i_k; every sign
produced by reordering is accounted for at multiplication or differentiation
time (Koszul signs).

`Operator` is a normal-ordered algebra of differential operators: each term
multiplies by an x-monomial and a theta-monomial AFTER differentiating by an
x-monomial and a theta-monomial.  Conventions (all verified by the adjointness
and composition property tests):

* theta-derivative of a single variable is the interior product,
  d/dtheta_i (theta_{i_1}...theta_{i_k}) = (-1)^(l-1) * (drop theta_{i_l})
  when i = i_l, else 0;
* a term's theta-derivative tuple (i_1 < ... < i_k) acts by applying
  d/dtheta_{i_1} first, then d/dtheta_{i_2}, and so on (the reversed
  composition that makes the pairing positive definite);
* a term's theta-multiplication tuple (j_1 < ... < j_l) multiplies on the
  left by theta_{j_1}...theta_{j_l}.

With these conventions the adjoint of a term swaps its multiplication and
derivative data with no extra sign.

Serialization: `to_string` / `parse` use the stable text form
``3*x1^2*x3*t2*t4 - 1/2*t1``: terms sorted in reverse lexicographic order of
(x-exponent vector, theta index tuple), variables named x1..xn and t1..tn.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb

XExp = tuple[int, ...]
Thetas = tuple[int, ...]
Monomial = tuple[XExp, Thetas]


def falling_factorial(a: int, k: int) -> int:
    """a (a-1) ... (a-k+1)."""
    out = 1
    for i in range(k):
        out *= a - i
    return out


def merge_thetas(a: Thetas, b: Thetas) -> tuple[int, Thetas] | None:
    """Sign and sorted union for theta_a * theta_b; None if an index repeats."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return None
    # Count inversions between the two increasing sequences.
    inv = 0
    j = 0
    for ai in a:
        while j < len(b) and b[j] < ai:
            j += 1
        inv += j
    merged = tuple(sorted(a + b))
    return (-1 if inv & 1 else 1), merged


def theta_interior(i: int, thetas: Thetas) -> tuple[int, Thetas] | None:
    """Interior product d/dtheta_i on a canonical theta word; None kills the term."""
    try:
        pos = thetas.index(i)
    except ValueError:
        return None
    sign = -1 if pos & 1 else 1
    return sign, thetas[:pos] + thetas[pos + 1 :]


class SuperPoly:
    """Element of Q[x_1..x_n, theta_1..theta_n], sparse and immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Monomial, Fraction] | None = None):
        self.n = n
        data: dict[Monomial, Fraction] = {}
        if terms:
            for (xexp, thetas), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                xexp = tuple(int(e) for e in xexp)
                thetas = tuple(int(t) for t in thetas)
                if len(xexp) != n:
                    raise ValueError("x-exponent vector has wrong length")
                if any(e < 0 for e in xexp):
                    raise ValueError("negative x-exponent")
                if list(thetas) != sorted(set(thetas)) or any(
                    not 1 <= t <= n for t in thetas
                ):
                    raise ValueError("theta indices must be strictly increasing in [1, n]")
                data[(xexp, thetas)] = data.get((xexp, thetas), Fraction(0)) + c
        self.terms = {k: v for k, v in data.items() if v}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SuperPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "SuperPoly":
        return cls.constant(n, 1)

    @classmethod
    def constant(cls, n: int, c) -> "SuperPoly":
        return cls(n, {((0,) * n, ()): Fraction(c)})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "SuperPoly":
        exp = [0] * n
        exp[i - 1] = power
        return cls(n, {(tuple(exp), ()): Fraction(1)})

    @classmethod
    def theta(cls, n: int, i: int) -> "SuperPoly":
        return cls(n, {((0,) * n, (i,)): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, xexp, thetas=(), coeff=1) -> "SuperPoly":
        return cls(n, {(tuple(xexp), tuple(thetas)): Fraction(coeff)})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperPoly.constant(self.n, other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_bihomogeneous(self) -> bool:
        return len({(sum(x), len(t)) for x, t in self.terms}) <= 1

    def bidegree(self) -> tuple[int, int] | None:
        """(x-degree, theta-degree) of a bi-homogeneous element; None if zero."""
        degs = {(sum(x), len(t)) for x, t in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("not bi-homogeneous")
        return degs.pop()

    def bihomogeneous_component(self, xdeg: int, tdeg: int) -> "SuperPoly":
        out = {
            k: v for k, v in self.terms.items() if sum(k[0]) == xdeg and len(k[1]) == tdeg
        }
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    def constant_term(self) -> Fraction:
        return self.terms.get(((0,) * self.n, ()), Fraction(0))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "SuperPoly"):
        if self.n != other.n:
            raise ValueError("mismatched variable counts")

    def __add__(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            other = SuperPoly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    __radd__ = __add__

    def __neg__(self) -> "SuperPoly":
        res = SuperPoly.__new__(SuperPoly)
        res.n = self.n
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            other = SuperPoly.constant(self.n, other)
        return self + (-other)

    def __mul__(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            res = SuperPoly.__new__(SuperPoly)
            res.n = self.n
            res.terms = {k: v * c for k, v in self.terms.items()} if c else {}
            return res
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for (x1, t1), c1 in self.terms.items():
            for (x2, t2), c2 in other.terms.items():
                merged = merge_thetas(t1, t2)
                if merged is None:
                    continue
                sign, thetas = merged
                xexp = tuple(a + b for a, b in zip(x1, x2))
                key = (xexp, thetas)
                s = out.get(key, Fraction(0)) + sign * c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SuperPoly":
        if k < 0:
            raise ValueError("negative power")
        result = SuperPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus --------------------------------------------------------

    def theta_derivative(self, i: int) -> "SuperPoly":
        """Interior product d/dtheta_i, applied term-wise."""
        if not 1 <= i <= self.n:
            raise ValueError("theta index out of range")
        out: dict[Monomial, Fraction] = {}
        for (xexp, thetas), c in self.terms.items():
            hit = theta_interior(i, thetas)
            if hit is None:
                continue
            sign, rest = hit
            key = (xexp, rest)
            s = out.get(key, Fraction(0)) + sign * c
            if s:
                out[key] = s
            else:
                del out[key]
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    def x_derivative(self, beta) -> "SuperPoly":
        """Apply prod_j (d/dx_j)^beta_j."""
        beta = tuple(beta)
        out: dict[Monomial, Fraction] = {}
        for (xexp, thetas), c in self.terms.items():
            coeff = c
            new = list(xexp)
            for j, b in enumerate(beta):
                if b:
                    a = new[j]
                    if a < b:
                        coeff = Fraction(0)
                        break
                    coeff *= falling_factorial(a, b)
                    new[j] = a - b
            if coeff:
                key = (tuple(new), thetas)
                s = out.get(key, Fraction(0)) + coeff
                if s:
                    out[key] = s
                else:
                    del out[key]
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    def scalar_ratio(self, other: "SuperPoly") -> Fraction | None:
        """c with self == c * other, or None (zero polys never match nonzero)."""
        self._check(other)
        if self.is_zero() and other.is_zero():
            return Fraction(1)
        if self.is_zero() or other.is_zero():
            return None
        if set(self.terms) != set(other.terms):
            return None
        items = iter(self.terms.items())
        key, val = next(items)
        ratio = val / other.terms[key]
        for key, val in items:
            if val != ratio * other.terms[key]:
                return None
        return ratio

    def act_signed_permutation(self, perm, signs) -> "SuperPoly":
        """Substitute x_j -> signs[j] x_{perm[j]}, theta_j -> signs[j] theta_{perm[j]}.

        perm and signs are 1-indexed by position (perm[j-1] is the image of j).
        """
        out: dict[Monomial, Fraction] = {}
        for (xexp, thetas), c in self.terms.items():
            coeff = c
            newx = [0] * self.n
            for j, e in enumerate(xexp):
                if e:
                    newx[perm[j] - 1] = e
                    if signs[j] == -1 and e & 1:
                        coeff = -coeff
            images = []
            for t in thetas:
                if signs[t - 1] == -1:
                    coeff = -coeff
                images.append(perm[t - 1])
            # Koszul sign from sorting the images.
            arr = list(images)
            for a in range(len(arr)):
                for b in range(a + 1, len(arr)):
                    if arr[a] > arr[b]:
                        coeff = -coeff
            key = (tuple(newx), tuple(sorted(images)))
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            else:
                del out[key]
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    # -- serialization ---------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (xexp, thetas), c in self.sorted_terms():
            factors = []
            for j, e in enumerate(xexp):
                if e == 1:
                    factors.append(f"x{j + 1}")
                elif e:
                    factors.append(f"x{j + 1}^{e}")
            for t in thetas:
                factors.append(f"t{t}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"SuperPoly({self.n}, {self.to_string()})"

    @classmethod
    def parse(cls, text: str, n: int) -> "SuperPoly":
        """Inverse of to_string (also accepts unnormalized whitespace/signs)."""
        s = text.strip()
        if s in ("0", "-0", "+0"):
            return cls.zero(n)
        s = s.replace("-", "+-")
        chunks = [c.strip() for c in s.split("+") if c.strip()]
        terms: dict[Monomial, Fraction] = {}
        for chunk in chunks:
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:].strip()
            coeff = Fraction(1)
            xexp = [0] * n
            thetas: list[int] = []
            for factor in chunk.split("*"):
                factor = factor.strip()
                if not factor:
                    continue
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if m:
                    idx, e = int(m.group(1)), int(m.group(2) or 1)
                    if not 1 <= idx <= n:
                        raise ValueError(f"variable x{idx} out of range")
                    xexp[idx - 1] += e
                    continue
                m = re.fullmatch(r"t(\d+)", factor)
                if m:
                    idx = int(m.group(1))
                    if not 1 <= idx <= n:
                        raise ValueError(f"variable t{idx} out of range")
                    thetas.append(idx)
                    continue
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if m:
                    coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                    continue
                raise ValueError(f"cannot parse factor {factor!r}")
            if neg:
                coeff = -coeff
            if sorted(thetas) != sorted(set(thetas)):
                coeff = Fraction(0)
            key = (tuple(xexp), tuple(sorted(thetas)))
            if coeff:
                terms[key] = terms.get(key, Fraction(0)) + coeff
        return cls(n, terms)


# ---------------------------------------------------------------------------
# Normal-ordered operator algebra
# ---------------------------------------------------------------------------

# Operator term key: (mulx, multheta, derx, dertheta).
OpKey = tuple[XExp, Thetas, XExp, Thetas]


@lru_cache(maxsize=None)
def _normalize_theta_word(word: tuple) -> tuple[tuple[tuple[Thetas, Thetas], int], ...]:
    """Normal-order a composition word of theta symbols.

    word is a tuple of ('m', i) / ('d', i) read left to right as operator
    composition (the rightmost symbol acts first).  Returns ((B, C), coeff)
    pairs with B the ascending multiplication tuple and C the ascending
    derivative tuple of a normal-ordered term.
    Rules: dd and mm anticommute, and d_i m_j = delta_ij - m_j d_i.
    """
    for t in range(len(word) - 1):
        (k1, i1), (k2, i2) = word[t], word[t + 1]
        if k1 == "d" and k2 == "m":
            pre, post = word[:t], word[t + 2 :]
            results: dict[tuple, int] = {}
            swapped = pre + (("m", i2), ("d", i1)) + post
            results[swapped] = -1
            if i1 == i2:
                results[pre + post] = results.get(pre + post, 0) + 1
            out: dict[tuple[Thetas, Thetas], int] = {}
            for w, c in results.items():
                for key, c2 in _normalize_theta_word(w):
                    s = out.get(key, 0) + c * c2
                    if s:
                        out[key] = s
                    else:
                        del out[key]
            return tuple(sorted(out.items()))
        if k1 == k2 == "m":
            if i1 == i2:
                return ()
            if i1 > i2:
                sw = word[:t] + (("m", i2), ("m", i1)) + word[t + 2 :]
                return tuple(
                    (key, -c) for key, c in _normalize_theta_word(sw)
                )
        if k1 == k2 == "d":
            if i1 == i2:
                return ()
            if i1 < i2:  # derivative segment must be descending left-to-right
                sw = word[:t] + (("d", i2), ("d", i1)) + word[t + 2 :]
                return tuple(
                    (key, -c) for key, c in _normalize_theta_word(sw)
                )
    mul = tuple(i for k, i in word if k == "m")
    der = tuple(reversed([i for k, i in word if k == "d"]))
    return (((mul, der), 1),)


def _theta_word(multheta: Thetas, dertheta: Thetas) -> tuple:
    """Word for the normal-ordered theta part M(multheta) D(dertheta)."""
    return tuple(("m", i) for i in multheta) + tuple(
        ("d", i) for i in reversed(dertheta)
    )


class Operator:
    """Normal-ordered sum of (multiply by monomials) o (derive by monomials)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[OpKey, Fraction] | None = None):
        self.n = n
        data: dict[OpKey, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    data[key] = data.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in data.items() if v}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Operator":
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> "Operator":
        z = (0,) * n
        return cls(n, {(z, (), z, ()): Fraction(1)})

    @classmethod
    def term(cls, n, coeff=1, mulx=None, multheta=(), derx=None, dertheta=()) -> "Operator":
        z = (0,) * n
        mulx = z if mulx is None else tuple(mulx)
        derx = z if derx is None else tuple(derx)
        return cls(n, {(mulx, tuple(multheta), derx, tuple(dertheta)): Fraction(coeff)})

    @classmethod
    def x_partial(cls, n: int, i: int, power: int = 1) -> "Operator":
        exp = [0] * n
        exp[i - 1] = power
        return cls.term(n, derx=exp)

    @classmethod
    def theta_partial(cls, n: int, i: int) -> "Operator":
        return cls.term(n, dertheta=(i,))

    @classmethod
    def x_multiplication(cls, n: int, i: int, power: int = 1) -> "Operator":
        exp = [0] * n
        exp[i - 1] = power
        return cls.term(n, mulx=exp)

    @classmethod
    def theta_multiplication(cls, n: int, i: int) -> "Operator":
        return cls.term(n, multheta=(i,))

    @classmethod
    def exterior_derivative(cls, n: int) -> "Operator":
        """d = sum_j (d/dx_j) theta_j."""
        out = cls.zero(n)
        for j in range(1, n + 1):
            exp = [0] * n
            exp[j - 1] = 1
            out = out + cls.term(n, multheta=(j,), derx=exp)
        return out

    @classmethod
    def power_exterior_derivative(cls, n: int, power: int) -> "Operator":
        """sum_j (d/dx_j)^power theta_j; power 0 gives sum_j theta_j."""
        out = cls.zero(n)
        for j in range(1, n + 1):
            exp = [0] * n
            exp[j - 1] = power
            out = out + cls.term(n, multheta=(j,), derx=exp)
        return out

    @classmethod
    def theta_weighted_derivative(cls, n: int, exps_by_theta) -> "Operator":
        """sum_j d_{x^{exps_by_theta[j]}} theta_j for a list of exponent vectors."""
        out = cls.zero(n)
        for j, exp in enumerate(exps_by_theta, start=1):
            out = out + cls.term(n, multheta=(j,), derx=exp)
        return out

    # -- algebra ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Operator") -> "Operator":
        if self.n != other.n:
            raise ValueError("mismatched variable counts")
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = Operator.__new__(Operator)
        res.n, res.terms = self.n, out
        return res

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-1) * other

    def __mul__(self, c) -> "Operator":
        c = Fraction(c)
        res = Operator.__new__(Operator)
        res.n = self.n
        res.terms = {k: v * c for k, v in self.terms.items()} if c else {}
        return res

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return self * -1

    def apply(self, f: SuperPoly) -> SuperPoly:
        """Evaluate on a polynomial: derivatives first, then multiplications."""
        if f.n != self.n:
            raise ValueError("mismatched variable counts")
        out: dict[Monomial, Fraction] = {}
        for (mulx, multheta, derx, dertheta), oc in self.terms.items():
            for (xexp, thetas), c in f.terms.items():
                coeff = oc * c
                # x-derivatives
                newx = list(xexp)
                dead = False
                for j, b in enumerate(derx):
                    if b:
                        a = newx[j]
                        if a < b:
                            dead = True
                            break
                        coeff *= falling_factorial(a, b)
                        newx[j] = a - b
                if dead or not coeff:
                    continue
                # theta-derivatives: ascending tuple applied smallest-first
                word = thetas
                sign = 1
                for t in dertheta:
                    hit = theta_interior(t, word)
                    if hit is None:
                        dead = True
                        break
                    s, word = hit
                    sign *= s
                if dead:
                    continue
                # theta multiplication on the left
                merged = merge_thetas(multheta, word)
                if merged is None:
                    continue
                s2, word = merged
                # x multiplication
                for j, b in enumerate(mulx):
                    if b:
                        newx[j] += b
                key = (tuple(newx), word)
                val = out.get(key, Fraction(0)) + coeff * sign * s2
                if val:
                    out[key] = val
                else:
                    del out[key]
        res = SuperPoly.__new__(SuperPoly)
        res.n, res.terms = self.n, out
        return res

    __call__ = apply

    def adjoint(self) -> "Operator":
        """Adjoint for the differentiation pairing: swap mul and der data."""
        res = Operator.__new__(Operator)
        res.n = self.n
        res.terms = {
            (derx, dertheta, mulx, multheta): c
            for (mulx, multheta, derx, dertheta), c in self.terms.items()
        }
        return res

    def __matmul__(self, other: "Operator") -> "Operator":
        """Composition self o other, re-normal-ordered."""
        if self.n != other.n:
            raise ValueError("mismatched variable counts")
        n = self.n
        out: dict[OpKey, Fraction] = {}
        for (a1, b1, d1, c1), coef1 in self.terms.items():
            for (a2, b2, d2, c2), coef2 in other.terms.items():
                base = coef1 * coef2
                # Push D_x(d1) through M_x(a2) variable by variable:
                # d^a x^b = sum_g C(a,g) b-falling-g x^(b-g) d^(a-g).
                xparts: list[tuple[Fraction, list[int], list[int]]] = [
                    (base, list(a2), list(d1))
                ]
                for v in range(n):
                    a, b = d1[v], a2[v]
                    if a == 0 or b == 0:
                        continue
                    expanded = []
                    for coeff, mul, der in xparts:
                        for g in range(0, min(a, b) + 1):
                            w = comb(a, g) * falling_factorial(b, g)
                            m2, r2 = list(mul), list(der)
                            m2[v] = b - g
                            r2[v] = a - g
                            expanded.append((coeff * w, m2, r2))
                    xparts = expanded
                theta_terms = _normalize_theta_word(
                    _theta_word(b1, c1) + _theta_word(b2, c2)
                )
                if not theta_terms:
                    continue
                for coeff, mul_mid, der_mid in xparts:
                    mulx = tuple(x + y for x, y in zip(a1, mul_mid))
                    derx = tuple(x + y for x, y in zip(der_mid, d2))
                    for (bt, ct), tsign in theta_terms:
                        key = (mulx, bt, derx, ct)
                        val = out.get(key, Fraction(0)) + coeff * tsign
                        if val:
                            out[key] = val
                        else:
                            del out[key]
        res = Operator.__new__(Operator)
        res.n, res.terms = self.n, out
        return res

    def bidegree_shift(self) -> tuple[int, int] | None:
        """(x-degree shift, theta-degree shift) if uniform across terms."""
        shifts = {
            (sum(mulx) - sum(derx), len(multheta) - len(dertheta))
            for (mulx, multheta, derx, dertheta) in self.terms
        }
        if not shifts:
            return None
        if len(shifts) > 1:
            raise ValueError("operator is not bi-homogeneous")
        return shifts.pop()

    def __repr__(self):
        return f"Operator({self.n}, {len(self.terms)} terms)"


def partial_operator(omega: SuperPoly) -> Operator:
    """The differentiation operator attached to omega.

    For omega = sum c x^alpha theta_{i_1}...theta_{i_k} this is
    sum c d_x^alpha d_theta(i_k)...d_theta(i_1): x's become x-derivatives,
    thetas become interior products applied in reversed order.  (The
    coefficient conjugation is the identity over Q.)
    """
    terms: dict[OpKey, Fraction] = {}
    z = (0,) * omega.n
    for (xexp, thetas), c in omega.terms.items():
        terms[(z, (), xexp, thetas)] = c
    return Operator(omega.n, terms)


def pairing(f: SuperPoly, omega: SuperPoly) -> Fraction:
    """Positive-definite pairing: constant coefficient of (d_omega f)."""
    if f.n != omega.n:
        raise ValueError("mismatched variable counts")
    # Distinct canonical monomials are orthogonal and (x^a theta_I, x^a theta_I)
    # is a!, so the pairing is diagonal; this is the constant coefficient of
    # partial_operator(omega).apply(f) without building the intermediate.
    total = Fraction(0)
    for key, oc in omega.terms.items():
        c = f.terms.get(key)
        if c is None:
            continue
        prod = 1
        for e in key[0]:
            prod *= falling_factorial(e, e)
        total += oc * c * prod
    return total
