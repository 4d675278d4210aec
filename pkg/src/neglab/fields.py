"""Small finite fields GF(p^e) with elements encoded as integers.

An element of GF(p^e) is the integer whose base-p digits are the
coefficients (constant term first) of its representative polynomial modulo
the field's defining polynomial.  The integers ``0 .. p-1`` are therefore the
prime subfield, and GF(p) embeds into GF(p^e) without any conversion.
"""

from functools import lru_cache
from itertools import product

from neglab.errors import ParameterError


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q):
    """Return ``(p, e)`` with ``q = p^e``, or raise :class:`ParameterError`."""
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"{q!r} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ParameterError(f"{q} is not a prime power")
    return p, e


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists (constant first) modulo a monic polynomial."""
    e = len(modulus) - 1
    out = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            for j in range(e + 1):
                out[i - e + j] = (out[i - e + j] - c * modulus[j]) % p
    return out[:e]


def _is_irreducible(modulus, p):
    e = len(modulus) - 1
    # a polynomial of degree e is irreducible iff it has no factor of degree <= e/2
    for deg in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=deg):
            factor = list(tail) + [1]
            if _poly_divides(factor, modulus, p):
                return False
    return True


def _poly_divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    for i in range(len(g) - 1, df - 1, -1):
        c = g[i]
        if c:
            for j in range(df + 1):
                g[i - df + j] = (g[i - df + j] - c * f[j]) % p
    return not any(g[:df])


def _first_irreducible(p, e):
    for tail in product(range(p), repeat=e):
        modulus = list(reversed(tail)) + [1]
        if modulus[0] and _is_irreducible(modulus, p):
            return tuple(modulus)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field with ``p**e`` elements."""

    def __init__(self, p, e=1):
        if not is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        if e < 1:
            raise ParameterError("field degree must be positive")
        self.p, self.e = p, e
        self.q = p ** e
        if e == 1:
            self.modulus = (0, 1)
            return
        self.modulus = _first_irreducible(p, e)
        self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits(self, digits):
        a = 0
        for x in reversed(digits):
            a = a * self.p + x
        return a

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = 1
            gd = self._digits(g)
            for _ in range(q - 2):
                x = self._from_digits(_poly_mulmod(self._digits(x), gd, self.modulus, self.p))
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError("no primitive element")
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    def __repr__(self):
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def elements(self):
        return range(self.q)

    def __call__(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        return self._from_digits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        return self._from_digits([-x % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a, n):
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def primitive_element(self):
        if self.e > 1:
            return self._exp[1] if self.q > 2 else 1
        return primitive_root(self.p)

    def root_of_unity(self, n):
        """A primitive n-th root of unity; needs n | q - 1."""
        if (self.q - 1) % n:
            raise ParameterError(f"{self!r} has no primitive {n}-th root of unity")
        return self.pow(self.primitive_element(), (self.q - 1) // n)

    def rank(self, rows):
        """Rank of a matrix given as a list of rows of field elements."""
        if self.e == 1:
            return _rank_mod_p(rows, self.p)
        a = [list(r) for r in rows]
        if not a:
            return 0
        ncols = len(a[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(a)) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = self.inv(a[r][c])
            a[r] = [self.mul(inv, x) for x in a[r]]
            for i in range(r + 1, len(a)):
                f = a[i][c]
                if f:
                    row = a[r]
                    a[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(a[i], row)]
            r += 1
        return r


def _rank_mod_p(rows, p):
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        prow = [x * inv % p for x in a[r]]
        a[r] = prow
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        r += 1
        if r == len(a):
            break
    return r


@lru_cache(maxsize=None)
def primitive_root(p):
    """Least generator of the multiplicative group mod p."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if p == 2:
        return 1
    n = p - 1
    factors = {f for f in range(2, n + 1) if n % f == 0 and is_prime(f)}
    for g in range(2, p):
        if all(pow(g, n // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable")


def least_prime_congruent_one(n, bound=10 ** 6):
    """Least prime p with p = 1 (mod n) and p <= bound."""
    p = n + 1
    while p <= bound:
        if is_prime(p):
            return p
        p += n
    return None


def parse_field(text):
    """``"7"``, ``"2^2"`` or ``"4"`` -> :class:`GF`."""
    try:
        if "^" in text:
            p, e = (int(x) for x in text.split("^"))
        else:
            p, e = prime_power(int(text))
    except ValueError:
        raise ParameterError(f"cannot parse field {text!r}") from None
    return GF(p, e)
