"""Exact arithmetic kernel: coefficient domains, sparse multivariate polynomials,
and truncated power series with inversion, composition, and reversion.

Every value is exact (machine ints, Fractions, or polynomials over those);
nothing in the package ever rounds.
"""

from fractions import Fraction


class DomainMismatchError(TypeError):
    """Operands live over different coefficient domains."""


class ExactnessError(ArithmeticError):
    """A division that was required to be exact is not, or a non-unit was inverted."""


class PrecisionError(ValueError):
    """A coefficient beyond the tracked precision was requested."""


# ---------------------------------------------------------------------------
# scalar coefficient domains


class IntegerRing:
    """Arbitrary-precision integers."""

    name = "ZZ"
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainMismatchError("bool is not an integer coefficient")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise DomainMismatchError("cannot coerce %r into %s" % (x, self.name))

    def canon(self, a):
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, n):
        return a * n

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a == 1 or a == -1

    def invert(self, a):
        if not self.is_unit(a):
            raise ExactnessError("%r is not a unit in %s" % (a, self.name))
        return a

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in %s" % self.name)
        q, r = divmod(a, b)
        if r:
            raise ExactnessError("%r is not divisible by %r" % (a, b))
        return q

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(self.name)


class RationalRing:
    """Exact rationals (fractions.Fraction)."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainMismatchError("bool is not a rational coefficient")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainMismatchError("cannot coerce %r into %s" % (x, self.name))

    def canon(self, a):
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, n):
        return a * n

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise ExactnessError("zero is not a unit in %s" % self.name)
        return 1 / Fraction(a)

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in %s" % self.name)
        return Fraction(a) / b

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(self.name)


class PrimeField:
    """Integers mod a prime, represented canonically in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = p
        self.name = "GF(%d)" % p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainMismatchError("bool is not a field coefficient")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ExactnessError("denominator of %r vanishes mod %d" % (x, self.p))
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise DomainMismatchError("cannot coerce %r into %s" % (x, self.name))

    def canon(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul_int(self, a, n):
        return (a * n) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_unit(self, a):
        return a % self.p != 0

    def invert(self, a):
        if a % self.p == 0:
            raise ExactnessError("zero is not a unit in %s" % self.name)
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        return self.mul(a, self.invert(b))

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(other) is type(self) and other.p == self.p

    def __hash__(self):
        return hash((self.name,))


ZZ = IntegerRing()
QQ = RationalRing()


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class PolynomialRing:
    """Sparse polynomials in named variables over a scalar domain.

    Doubles as a coefficient domain itself, so truncated series can run over
    polynomial coefficients through the same interface as over scalars.
    """

    def __init__(self, variables, base=ZZ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names: %r" % (variables,))
        self.variables = variables
        self.base = base
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self.name = "%s[%s]" % (base.name, ", ".join(variables))
        self.zero = MPoly(self, {})
        zexp = (0,) * self.nvars
        self.one = MPoly(self, {zexp: base.one})

    def gen(self, name):
        exp = [0] * self.nvars
        exp[self._index[name]] = 1
        return MPoly(self, {tuple(exp): self.base.one})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def const(self, x):
        c = self.base.coerce(x)
        if self.base.is_zero(c):
            return self.zero
        return MPoly(self, {(0,) * self.nvars: c})

    def from_terms(self, terms):
        return MPoly(self, terms)

    def coerce(self, x):
        if isinstance(x, MPoly):
            if x.ring == self:
                return x
            raise DomainMismatchError("polynomial from %s used over %s" % (x.ring.name, self.name))
        return self.const(x)

    # domain interface, so a PolynomialRing can serve as a series coefficient ring
    def canon(self, a):
        return self.coerce(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, n):
        return a.mul_int(n)

    def is_zero(self, a):
        return not a.terms

    def is_unit(self, a):
        c = a.as_constant()
        return c is not None and self.base.is_unit(c)

    def invert(self, a):
        c = a.as_constant()
        if c is None:
            raise ExactnessError("cannot invert non-constant polynomial %s" % a)
        return self.const(self.base.invert(c))

    def exact_div(self, a, b):
        c = b.as_constant()
        if c is None:
            raise ExactnessError("exact division only by constant polynomials, got %s" % b)
        return a.exact_scalar_div(c)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.variables == self.variables
            and other.base == self.base
        )

    def __hash__(self):
        return hash((self.variables, self.base))


class MPoly:
    """Sparse multivariate polynomial: a map from exponent vectors to coefficients.

    Immutable by convention; no stored coefficient is zero, and every exponent
    vector has one entry per ring variable.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
            return
        base = ring.base
        clean = {}
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise ValueError(
                    "exponent vector %r has length %d, ring has %d variables"
                    % (exp, len(exp), ring.nvars)
                )
            c = base.canon(base.coerce(c))
            if not base.is_zero(c):
                clean[exp] = c
        self.terms = clean

    # -- basic queries

    def is_zero(self):
        return not self.terms

    def as_constant(self):
        """The scalar value if this polynomial is constant, else None."""
        if not self.terms:
            return self.ring.base.zero
        if len(self.terms) == 1:
            exp, c = next(iter(self.terms.items()))
            if not any(exp):
                return c
        return None

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.base.zero)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.base.zero)

    # -- arithmetic

    def _check(self, other):
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise DomainMismatchError(
                    "mixed polynomial domains: %s vs %s" % (self.ring.name, other.ring.name)
                )
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._check(other)
        base = self.ring.base
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = base.add(out.get(exp, base.zero), c)
            if base.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return MPoly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        base = self.ring.base
        return MPoly(self.ring, {e: base.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        base = self.ring.base
        badd, bmul, bzero = base.add, base.mul, base.is_zero
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                p = bmul(c1, c2)
                s = badd(out.get(exp, base.zero), p)
                if bzero(s):
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return MPoly(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def mul_int(self, n):
        base = self.ring.base
        out = {}
        for e, c in self.terms.items():
            s = base.canon(base.mul_int(c, n))
            if not base.is_zero(s):
                out[e] = s
        return MPoly(self.ring, out, _clean=True)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ring.one
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def exact_scalar_div(self, c):
        base = self.ring.base
        return MPoly(
            self.ring,
            {e: base.exact_div(v, c) for e, v in self.terms.items()},
            _clean=True,
        )

    # -- structure maps

    def substitute_scalars(self, values):
        """Evaluate at scalar values for every variable; returns a base-ring scalar."""
        base = self.ring.base
        vals = [base.coerce(values[v]) for v in self.ring.variables]
        total = base.zero
        for exp, c in self.terms.items():
            t = c
            for v, e in zip(vals, exp):
                for _ in range(e):
                    t = base.mul(t, v)
            total = base.add(total, t)
        return base.canon(total)

    def reduce_mod(self, p):
        """Image in the same variables over GF(p)."""
        ring = PolynomialRing(self.ring.variables, PrimeField(p))
        return MPoly(ring, dict(self.terms))

    def to_base(self, new_base):
        """Move to the same variables over another scalar domain, exactly."""
        ring = PolynomialRing(self.ring.variables, new_base)
        return MPoly(ring, dict(self.terms))

    # -- comparison / display

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.coerce(other)
        except DomainMismatchError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def to_dict(self):
        """JSON-ready form; integer or mod-p coefficients."""
        payload = {
            "variables": list(self.ring.variables),
            "terms": [[list(e), c] for e, c in sorted(self.terms.items())],
        }
        if isinstance(self.ring.base, PrimeField):
            payload["modulus"] = self.ring.base.p
        elif not isinstance(self.ring.base, IntegerRing):
            raise TypeError("only integer or mod-p polynomials serialize to JSON")
        return payload

    @classmethod
    def from_dict(cls, d):
        base = PrimeField(d["modulus"]) if "modulus" in d else ZZ
        ring = PolynomialRing(tuple(d["variables"]), base)
        return ring.from_terms({tuple(e): c for e, c in d["terms"]})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        pieces = []
        for exp, c in self.sorted_terms():
            factors = []
            for v, e in zip(names, exp):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append("%s^%d" % (v, e))
            mono = "*".join(factors)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = "%s*%s" % (c, mono)
            pieces.append(body)
        out = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                out += " - " + body[1:]
            else:
                out += " + " + body
        return out

    def __repr__(self):
        return "MPoly(%s)" % self


# ---------------------------------------------------------------------------
# truncated power series


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncSeries:
    """Truncated power series over a coefficient domain.

    Coefficients are indexed from exponent 0; ``prec`` is the first unknown
    exponent (None means the series is an exact polynomial).  Binary operations
    propagate the minimum justified precision of their inputs and never extend
    it silently.
    """

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec=None):
        self.ring = ring
        coeffs = [ring.canon(ring.coerce(c)) for c in coeffs]
        if prec is not None:
            if prec < 0:
                raise ValueError("precision must be nonnegative")
            coeffs = coeffs[:prec]
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors

    @classmethod
    def zero(cls, ring, prec=None):
        return cls(ring, [], prec)

    @classmethod
    def one(cls, ring, prec=None):
        return cls(ring, [ring.one], prec)

    @classmethod
    def identity(cls, ring, prec=None):
        """The series z."""
        return cls(ring, [ring.zero, ring.one], prec)

    # -- queries

    def coeff(self, i):
        if self.prec is not None and i >= self.prec:
            raise PrecisionError("coefficient %d beyond precision %d" % (i, self.prec))
        if i < 0 or i >= len(self.coeffs):
            return self.ring.zero
        return self.coeffs[i]

    def known(self, i):
        """Coefficient at i, or zero without a precision check (internal use)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def valuation(self):
        """Index of the lowest nonzero coefficient; equals prec for a zero series."""
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return self.prec

    def is_zero(self):
        return not self.coeffs

    def _vbound(self):
        """Valuation for precision bookkeeping; None means +infinity (exact zero)."""
        return self.valuation()

    def truncate(self, prec):
        return TruncSeries(self.ring, self.coeffs, _min_prec(self.prec, prec))

    # -- ring operations

    def _check(self, other):
        if isinstance(other, TruncSeries):
            if other.ring != self.ring:
                raise DomainMismatchError(
                    "mixed series domains: %s vs %s" % (self.ring.name, other.ring.name)
                )
            return other
        return TruncSeries(self.ring, [self.ring.coerce(other)])

    def __add__(self, other):
        other = self._check(other)
        prec = _min_prec(self.prec, other.prec)
        n = max(len(self.coeffs), len(other.coeffs))
        add = self.ring.add
        out = [add(self.known(i), other.known(i)) for i in range(n)]
        return TruncSeries(self.ring, out, prec)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg
        return TruncSeries(self.ring, [neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply every coefficient by a ring element."""
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return TruncSeries(self.ring, [mul(v, c) for v in self.coeffs], self.prec)

    def mul_int(self, n):
        mi = self.ring.mul_int
        return TruncSeries(self.ring, [mi(c, n) for c in self.coeffs], self.prec)

    def shift(self, k):
        """Multiply by z^k, k >= 0."""
        if k < 0:
            raise ValueError("shift exponent must be nonnegative")
        prec = None if self.prec is None else self.prec + k
        return TruncSeries(self.ring, [self.ring.zero] * k + self.coeffs, prec)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers must be nonnegative integers")
        result = TruncSeries.one(self.ring, self.prec if n else None)
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def inverse(self):
        return series_inverse(self)

    def reversion(self):
        return series_reversion(self)

    def exact_div(self, den):
        """Quotient q with q*den == self, checking divisibility at every step."""
        den = self._check(den)
        if den.is_zero() or not den.coeffs or self.ring.is_zero(den.coeffs[0]):
            raise ExactnessError("series division requires a nonzero constant term")
        prec = _min_prec(self.prec, den.prec)
        if prec is None:
            prec = max(len(self.coeffs), 1)
        ring = self.ring
        d0 = den.coeffs[0]
        out = []
        for n in range(prec):
            acc = self.known(n)
            for k in range(max(0, n - len(den.coeffs) + 1), n):
                acc = ring.sub(acc, ring.mul(out[k], den.known(n - k)))
            out.append(ring.exact_div(acc, d0))
        return TruncSeries(ring, out, prec)

    def compose(self, g):
        """self(g(z)); g must have zero constant term.

        Baby-step giant-step: with block size b, only O(b + n/b) full series
        products are needed; the per-block sums are coefficient scalings.
        """
        g = self._check(g)
        if g.coeffs and not self.ring.is_zero(g.known(0)):
            raise ValueError("composition requires the inner series to vanish at 0")
        prec = _min_prec(self.prec, g.prec)
        if prec is None:
            prec = max(len(self.coeffs) + len(g.coeffs), 1)
        coeffs = self.coeffs[: prec if prec else None]
        if not coeffs:
            return TruncSeries(self.ring, [], prec)
        g = g.truncate(prec)
        block = max(1, int(len(coeffs) ** 0.5))
        gpow = [TruncSeries.one(self.ring, prec)]
        for _ in range(block - 1):
            gpow.append(series_mul(gpow[-1], g).truncate(prec))
        giant = series_mul(gpow[-1], g).truncate(prec)  # g^block
        nblocks = -(-len(coeffs) // block)
        acc = TruncSeries(self.ring, [], prec)
        for j in range(nblocks - 1, -1, -1):
            part = TruncSeries(self.ring, [], prec)
            for r in range(min(block, len(coeffs) - j * block)):
                c = coeffs[j * block + r]
                if not self.ring.is_zero(c):
                    part = part + gpow[r].scale(c)
            acc = series_mul(acc, giant).truncate(prec) + part
        return acc.truncate(prec)

    def differentiate(self):
        mi = self.ring.mul_int
        out = [mi(c, i) for i, c in enumerate(self.coeffs)][1:]
        prec = None if self.prec is None else max(self.prec - 1, 0)
        return TruncSeries(self.ring, out, prec)

    def integrate(self):
        """Termwise antiderivative with constant 0; divisions must be exact."""
        ring = self.ring
        out = [ring.zero]
        for i, c in enumerate(self.coeffs):
            out.append(ring.exact_div(c, ring.coerce(i + 1)))
        prec = None if self.prec is None else self.prec + 1
        return TruncSeries(ring, out, prec)

    def map_coeffs(self, func, ring=None):
        ring = ring or self.ring
        return TruncSeries(ring, [func(c) for c in self.coeffs], self.prec)

    # -- comparison / display

    def same_to(self, other, prec=None):
        """Coefficientwise agreement through min(shared precision, prec)."""
        other = self._check(other)
        bound = _min_prec(_min_prec(self.prec, other.prec), prec)
        if bound is None:
            bound = max(len(self.coeffs), len(other.coeffs))
        eq = self.ring
        for i in range(bound):
            if not eq.is_zero(eq.sub(self.known(i), other.known(i))):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                other = self._check(other)
            except DomainMismatchError:
                return NotImplemented
        return self.ring == other.ring and self.prec == other.prec and self.coeffs == other.coeffs

    def __str__(self):
        pieces = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            cs = str(c)
            if any(op in cs[1:] for op in "+-"):
                cs = "(%s)" % cs
            if i == 0:
                pieces.append(cs)
            elif i == 1:
                pieces.append("%s*z" % cs)
            else:
                pieces.append("%s*z^%d" % (cs, i))
        body = " + ".join(pieces) if pieces else "0"
        if self.prec is not None:
            body += " + O(z^%d)" % self.prec
        return body

    def __repr__(self):
        return "TruncSeries(%s)" % self


def series_mul(f, g):
    """Truncated product; the result precision is the minimum justified one."""
    if f.ring != g.ring:
        raise DomainMismatchError("mixed series domains: %s vs %s" % (f.ring.name, g.ring.name))
    ring = f.ring
    if f.prec is None and g.prec is None:
        prec = None
        n = len(f.coeffs) + len(g.coeffs)
        n = max(n - 1, 0) if n else 0
    else:
        pf = f.prec if f.prec is not None else 10 ** 9
        pg = g.prec if g.prec is not None else 10 ** 9
        prec = min(pf + g._vbound(), pg + f._vbound())
        prec = min(prec, 10 ** 9)
        n = prec
    add, mul, is_zero = ring.add, ring.mul, ring.is_zero
    fa, ga = f.coeffs, g.coeffs
    out = [ring.zero] * n
    for i, ci in enumerate(fa):
        if is_zero(ci):
            continue
        top = min(len(ga), n - i)
        for j in range(top):
            cj = ga[j]
            if not is_zero(cj):
                out[i + j] = add(out[i + j], mul(ci, cj))
    return TruncSeries(ring, out, prec)


def series_inverse(f):
    """Multiplicative inverse; the lowest-order coefficient must be a unit."""
    ring = f.ring
    if not f.coeffs or ring.is_zero(f.coeffs[0]):
        raise ExactnessError("series inverse requires a unit constant term")
    c0 = ring.invert(f.coeffs[0])
    prec = f.prec if f.prec is not None else max(len(f.coeffs), 1)
    out = [c0]
    for n in range(1, prec):
        acc = ring.zero
        for k in range(max(0, n - len(f.coeffs) + 1), n):
            acc = ring.add(acc, ring.mul(out[k], f.known(n - k)))
        out.append(ring.neg(ring.mul(c0, acc)))
    return TruncSeries(ring, out, f.prec if f.prec is not None else prec)


def series_reversion(f):
    """Compositional inverse g with f(g(z)) = z = g(f(z)).

    Requires zero constant term and a unit linear coefficient.  Newton
    iteration with doubling precision.
    """
    ring = f.ring
    if f.coeffs and not ring.is_zero(f.known(0)):
        raise ValueError("reversion requires a zero constant term")
    if len(f.coeffs) < 2 or not ring.is_unit(f.known(1)):
        raise ValueError("reversion requires a unit linear coefficient")
    prec = f.prec if f.prec is not None else max(len(f.coeffs), 2)
    f = f.truncate(prec)
    inv1 = ring.invert(f.coeffs[1])
    g = TruncSeries(ring, [ring.zero, inv1], 2)
    z = TruncSeries.identity(ring, prec)
    k = 2
    while k < prec:
        k = min(2 * k, prec)
        g = TruncSeries(ring, g.coeffs, k)
        fg = f.truncate(k).compose(g)
        resid = fg - z.truncate(k)
        # f'(g) = (f(g))' / g', avoiding a second composition
        deriv = fg.differentiate().exact_div(g.differentiate().truncate(k - 1))
        g = g - series_mul(resid, series_inverse(deriv)).truncate(k)
    return g.truncate(prec)
