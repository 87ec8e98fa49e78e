"""Arithmetic in small finite fields GF(p^m).

Elements are plain integers in ``range(q)``.  The integer ``v`` stands for the
polynomial whose base-``p`` digits are its coefficients, constant term in the
least significant digit.  For ``m == 1`` this is just arithmetic mod ``p``.

The defining polynomial of every extension field is fixed (see ``MODULI``) so
that integer encodings are stable across runs and in files.
"""

from __future__ import annotations

import functools

import numpy as np

MAX_ORDER = 64

# Primitive moduli, coefficients constant term first (leading 1 included).
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    (3, 2): (2, 1, 1),  # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 2): (2, 1, 1),  # x^2 + x + 2
    (7, 2): (3, 1, 1),  # x^2 + x + 3
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _digits(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


class Field:
    """The finite field with ``q = p**m`` elements.

    Use :func:`field_new` (or :func:`GF`) rather than the constructor; those
    cache instances so each field exists once per process.
    """

    __slots__ = (
        "p", "m", "q", "modulus", "primitive",
        "exp_table", "log_table",
        "add_table", "mul_table", "neg_table", "inv_table",
        "np_add", "np_mul", "np_neg",
    )

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_ORDER:
            raise FieldError(f"GF({p}^{m}) is beyond the supported size q <= {MAX_ORDER}")
        if m > 1 and (p, m) not in MODULI:
            raise FieldError(f"no modulus fixed for GF({p}^{m})")
        self.p, self.m, self.q = p, m, q
        self.modulus = MODULI[(p, m)] if m > 1 else (0, 1)

        add = [[_undigits([(a + b) % p for a, b in zip(_digits(x, p, m), _digits(y, p, m))], p)
                for y in range(q)] for x in range(q)]
        neg = [_undigits([(-a) % p for a in _digits(x, p, m)], p) for x in range(q)]

        if m == 1:
            prim = next(g for g in range(1, q) if self._order_mod_p(g) == q - 1) if q > 2 else 1
            exp = [1]
            for _ in range(q - 2):
                exp.append(exp[-1] * prim % p)
        else:
            prim = p  # the class of x
            exp = [1]
            for _ in range(q - 2):
                exp.append(self._times_x(exp[-1]))
        if len(set(exp)) != q - 1 or 0 in exp:
            raise FieldError(f"modulus {self.modulus} is not primitive over GF({p})")
        log = [0] * q
        for e, v in enumerate(exp):
            log[v] = e

        mul = [[0] * q for _ in range(q)]
        for x in range(1, q):
            for y in range(1, q):
                mul[x][y] = exp[(log[x] + log[y]) % (q - 1)]
        inv = [0] + [exp[(-log[x]) % (q - 1)] for x in range(1, q)]

        self.primitive = prim
        self.exp_table, self.log_table = tuple(exp), tuple(log)
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        self.neg_table = tuple(neg)
        self.inv_table = tuple(inv)
        dtype = np.uint8
        self.np_add = np.array(add, dtype=dtype)
        self.np_mul = np.array(mul, dtype=dtype)
        self.np_neg = np.array(neg, dtype=dtype)
        for arr in (self.np_add, self.np_mul, self.np_neg):
            arr.flags.writeable = False

    def _order_mod_p(self, g: int) -> int:
        e, v = 1, g % self.p
        while v != 1:
            v = v * g % self.p
            e += 1
        return e

    def _times_x(self, v: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        ds = [0] + _digits(v, p, m)
        top = ds[m]
        return _undigits([(ds[i] - top * mod[i]) % p for i in range(m)], p)

    # Field objects are interned by field_new; identity and (p, m) agree.
    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_new, (self.p, self.m))

    def __len__(self):
        return self.q

    def elements(self) -> range:
        """Elements in canonical order: 0, 1, then ascending encoding."""
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return self.inv_table[x]

    def div(self, x: int, y: int) -> int:
        return self.mul_table[x][self.inv(y)]

    def pow(self, x: int, e: int) -> int:
        if e == 0:
            return 1
        if x == 0:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self!r}")
            return 0
        return self.exp_table[(self.log_table[x] * e) % (self.q - 1)]

    def element(self, literal: int) -> int:
        """Reduce an integer literal into the field.

        Negative literals are accepted for prime fields only and are read
        mod p, so ``-1`` over GF(3) is 2.
        """
        if 0 <= literal < self.q:
            return literal
        if self.m == 1:
            return literal % self.p
        raise FieldError(f"literal {literal} out of range for {self!r}")


@functools.lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> Field:
    return Field(p, m)


def GF(q: int) -> Field:
    """Field of order ``q`` given as a prime power integer."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return field_new(p, m)
    raise FieldError(f"{q} is not a prime power")
