"""Deterministic construction of F_{p^n} with full exp/dlog tables.

Field elements are encoded as plain integers in [0, q): the coefficient
vector (c0, ..., c_{n-1}) in the power basis of the modulus maps to
sum(c_i * p^i). For n = 1 this is the usual residue in [0, p). The whole
multiplicative group is tabulated once at build time, so multiplication,
inversion, powers and discrete logs are O(1) lookups afterwards.

Rebuilding the same (p, n) always yields bit-identical tables: the modulus
is the lexicographically least monic irreducible polynomial (coefficients
compared low-degree first) and the generator is the first element of
multiplicative order q-1 in lexicographic coefficient order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import DivisionByZero, DlogOfZero, FieldTooLarge, NotPrime

DEFAULT_MAX_Q = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic trial division; ample for the table-budget scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, {prime: multiplicity}."""
    fs: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fs[d] = fs.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fs[n] = fs.get(n, 0) + 1
    return fs


def iter_primes(lo: int, hi: int) -> Iterator[int]:
    """Primes p with lo <= p < hi, by sieve."""
    if hi <= 2:
        return
    sieve = bytearray([1]) * hi
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(hi - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    for p in range(max(lo, 2), hi):
        if sieve[p]:
            yield p


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over Z_p (construction-time only)
# ---------------------------------------------------------------------------


def _poly_mulmod(u: tuple[int, ...], v: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    # coefficients ascending degree; mod monic of degree n
    n = len(mod) - 1
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] = (out[i + j] + ui * vj) % p
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(n):
                out[i - n + j] = (out[i - n + j] - c * mod[j]) % p
    out = out[:n] + [0] * (n - len(out))
    return tuple(out[:n])


def _poly_powmod(u: tuple[int, ...], e: int, mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    n = len(mod) - 1
    r = (1,) + (0,) * (n - 1)
    b = tuple(u)
    while e:
        if e & 1:
            r = _poly_mulmod(r, b, mod, p)
        b = _poly_mulmod(b, b, mod, p)
        e >>= 1
    return r


def _is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    # Rabin's test: x^(p^n) = x mod f, and x^(p^(n/l)) != x for every prime l | n.
    n = len(mod) - 1
    if n == 1:
        return True
    if mod[0] == 0:
        return False  # root at 0
    x = tuple(1 if i == 1 else 0 for i in range(n))
    if _poly_powmod(x, p**n, mod, p) != x:
        return False
    for ell in factorize(n):
        if _poly_powmod(x, p ** (n // ell), mod, p) == x:
            return False
    return True


def _lexicographic_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n, tails compared low-degree first."""
    if n == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=n):
        cand = tail + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # impossible


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimePower:
    p: int
    n: int
    q: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"p = {self.p} is not prime")
        if self.n < 1 or self.q != self.p**self.n:
            raise ValueError(f"inconsistent prime power ({self.p}, {self.n}, {self.q})")


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable F_{p^n}; safe for shared reads after construction."""

    prime_power: PrimePower
    modulus: tuple[int, ...]  # monic, coefficients ascending degree, length n+1
    generator: int  # encoded element of multiplicative order q-1
    exp_table: np.ndarray = field(repr=False)  # t -> rho^t, length q-1
    dlog_table: np.ndarray = field(repr=False)  # element -> t, length q, -1 at 0

    @property
    def p(self) -> int:
        return self.prime_power.p

    @property
    def n(self) -> int:
        return self.prime_power.n

    @property
    def q(self) -> int:
        return self.prime_power.q

    # -- element encoding ---------------------------------------------------

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(tuple(coeffs)):
            v = v * self.p + c % self.p
        return v

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        v, pk = 0, 1
        for _ in range(self.n):
            v += ((a + b) % self.p) * pk
            a //= self.p
            b //= self.p
            pk *= self.p
        return v

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        if self.p == 2:
            return a
        v, pk = 0, 1
        for _ in range(self.n):
            v += (-a % self.p) * pk
            a //= self.p
            pk *= self.p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        m = self.q - 1
        return int(self.exp_table[(int(self.dlog_table[a]) + int(self.dlog_table[b])) % m])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        m = self.q - 1
        return int(self.exp_table[(-int(self.dlog_table[a])) % m])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        m = self.q - 1
        return int(self.exp_table[(int(self.dlog_table[a]) * e) % m])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DlogOfZero("discrete log of zero")
        return int(self.dlog_table[a])

    # -- vectorized arithmetic on encoded arrays ------------------------------

    def add_elems(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (u + v) % self.p
        if self.p == 2:
            return np.bitwise_xor(u, v)
        out = np.zeros_like(u)
        pk = 1
        for _ in range(self.n):
            out += ((u // pk + v // pk) % self.p) * pk
            pk *= self.p
        return out

    def sub_elems(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (u - v) % self.p
        if self.p == 2:
            return np.bitwise_xor(u, v)
        out = np.zeros_like(u)
        pk = 1
        for _ in range(self.n):
            out += ((u // pk - v // pk) % self.p) * pk
            pk *= self.p
        return out

    # -- provenance -----------------------------------------------------------

    def provenance(self) -> dict:
        """JSON-ready metadata stamped on all downstream outputs."""
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": list(self.coeffs(self.generator)),
        }


def _find_generator(p: int, n: int, modulus: tuple[int, ...]) -> tuple[int, ...]:
    """First coefficient vector (lex order) of multiplicative order q-1."""
    q = p**n
    one = (1,) + (0,) * (n - 1)
    prime_divisors = list(factorize(q - 1))
    for cand in itertools.product(range(p), repeat=n):
        if all(c == 0 for c in cand):
            continue
        if all(_poly_powmod(cand, (q - 1) // ell, modulus, p) != one for ell in prime_divisors):
            return cand
    raise AssertionError("no generator found")  # impossible for a field


def build_field(p: int, n: int, *, max_q: int = DEFAULT_MAX_Q, generator=None) -> FieldCtx:
    """Construct F_{p^n} deterministically.

    `generator` overrides the canonical scan (coefficient tuple or encoded
    int); it must still have full multiplicative order. Meant for
    generator-independence experiments.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    q = p**n
    if q > max_q:
        raise FieldTooLarge(f"q = {q} exceeds the table budget {max_q}")
    pp = PrimePower(p, n, q)
    modulus = _lexicographic_modulus(p, n)

    if generator is None:
        gen = _find_generator(p, n, modulus)
    else:
        gen = generator
        if isinstance(gen, int):
            g, out = gen, []
            for _ in range(n):
                out.append(g % p)
                g //= p
            gen = tuple(out)
        gen = tuple(int(c) % p for c in gen)
        if len(gen) != n:
            raise ValueError("generator coefficient vector has wrong length")

    one = (1,) + (0,) * (n - 1)
    exp = np.zeros(q - 1, dtype=np.int64)
    dlog = np.full(q, -1, dtype=np.int64)
    if n == 1:
        g = gen[0]
        cur = 1
        for t in range(q - 1):
            exp[t] = cur
            if dlog[cur] != -1:
                raise ValueError(f"generator {gen} does not have order q-1")
            dlog[cur] = t
            cur = cur * g % p
        if cur != 1:
            raise ValueError(f"generator {gen} does not have order q-1")
        enc_gen = g
    else:
        cur = one
        pows = [p**i for i in range(n)]
        for t in range(q - 1):
            v = sum(c * pk for c, pk in zip(cur, pows))
            exp[t] = v
            if dlog[v] != -1:
                raise ValueError(f"generator {gen} does not have order q-1")
            dlog[v] = t
            cur = _poly_mulmod(cur, gen, modulus, p)
        if cur != one:
            raise ValueError(f"generator {gen} does not have order q-1")
        enc_gen = sum(c * pk for c, pk in zip(gen, pows))

    exp.setflags(write=False)
    dlog.setflags(write=False)
    return FieldCtx(pp, modulus, int(enc_gen), exp, dlog)


def parse_prime_power(q: int) -> tuple[int, int]:
    """Factor q as p^n, raising NotPrime when q is not a prime power."""
    if q < 2:
        raise NotPrime(f"q = {q} is not a prime power")
    fs = factorize(q)
    if len(fs) != 1:
        raise NotPrime(f"q = {q} is not a prime power")
    [(p, n)] = fs.items()
    return p, n
