"""Classical level-one q-expansions with exact integer arithmetic.

Conventions: c4 = 1 + 240*sum sigma_3(n) q^n, c6 = 1 - 504*sum sigma_5(n) q^n,
Delta = (c4^3 - c6^2)/1728 = q*prod(1-q^n)^24, j = c4^3/Delta.
"""

from fractions import Fraction

from .exactalg import ExactnessError, PrecisionError


class QExpansion:
    """Truncated Laurent series in q with exact coefficients.

    ``val`` is the exponent of the first stored coefficient, ``prec`` the first
    unknown exponent; coefficients below ``val`` are exactly zero.  Stored
    coefficients are ints whenever possible (a Fraction with denominator 1 is
    normalized to int), and the leading stored coefficient is nonzero unless
    the series is identically zero.
    """

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val, coeffs, prec=None):
        coeffs = [self._canon(c) for c in coeffs]
        if prec is None:
            prec = val + len(coeffs)
        if val + len(coeffs) > prec:
            coeffs = coeffs[: prec - val]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @staticmethod
    def _canon(c):
        if isinstance(c, Fraction):
            if c.denominator == 1:
                return int(c)
            return c
        if isinstance(c, int) and not isinstance(c, bool):
            return c
        raise TypeError("q-expansion coefficients must be exact, got %r" % (c,))

    # -- constructors

    @classmethod
    def zero(cls, prec):
        return cls(prec, [], prec)

    @classmethod
    def one(cls, prec):
        return cls(0, [1], prec)

    @classmethod
    def q_power(cls, e, prec):
        return cls(e, [1], prec)

    # -- queries

    def is_zero(self):
        return not self.coeffs

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def coeff(self, n):
        if n >= self.prec:
            raise PrecisionError("coefficient of q^%d beyond precision %d" % (n, self.prec))
        if n < self.val or n >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[n - self.val]

    def known_range(self):
        return self.val, self.prec

    def truncate(self, prec):
        return QExpansion(self.val, self.coeffs, min(self.prec, prec))

    # -- arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QExpansion(0, [other], self.prec)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        out = []
        for n in range(lo, prec):
            a = self.coeffs[n - self.val] if self.val <= n < self.val + len(self.coeffs) else 0
            b = other.coeffs[n - other.val] if other.val <= n < other.val + len(other.coeffs) else 0
            out.append(a + b)
        return QExpansion(lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return QExpansion(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QExpansion(0, [other], self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QExpansion(self.val, [c * other for c in self.coeffs], self.prec)
        if self.is_zero() or other.is_zero():
            # a zero factor is known exactly through its precision window
            prec = min(self.prec + other.val, other.prec + self.val)
            return QExpansion.zero(prec)
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        n = prec - val
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            top = min(len(other.coeffs), n - i)
            for j in range(top):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QExpansion(val, out, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("q-expansion powers must be nonnegative integers")
        if n == 0:
            return QExpansion.one(self.prec)
        result = None
        square = self
        while n:
            if n & 1:
                result = square if result is None else result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def exact_scalar_div(self, d):
        """Divide by an integer, verifying every coefficient divides exactly."""
        out = []
        for c in self.coeffs:
            if isinstance(c, int):
                q, r = divmod(c, d)
                if r:
                    raise ExactnessError("coefficient %d is not divisible by %d" % (c, d))
                out.append(q)
            else:
                out.append(c / d)
        return QExpansion(self.val, out, self.prec)

    def exact_div(self, den):
        """Laurent quotient self/den with exact integer coefficient checks."""
        if den.is_zero():
            raise ZeroDivisionError("division by an identically zero q-expansion")
        prec = min(self.prec - den.val, den.prec - 2 * den.val + self.val)
        val = self.val - den.val
        n = prec - val
        if n <= 0:
            raise PrecisionError("insufficient precision for q-expansion division")
        d = den.coeffs
        d0 = d[0]
        out = []
        for m in range(n):
            acc = self.coeff(val + den.val + m)
            for k in range(max(0, m - len(d) + 1), m):
                acc -= out[k] * d[m - k]
            if isinstance(acc, int) and isinstance(d0, int):
                q, r = divmod(acc, d0)
                if r:
                    raise ExactnessError(
                        "inexact division at q^%d: %d by %d" % (val + m, acc, d0)
                    )
                out.append(q)
            else:
                out.append(Fraction(acc) / d0)
        return QExpansion(val, out, prec)

    def inverse(self, prec=None):
        one = QExpansion.one(self.prec if prec is None else prec + self.val)
        return one.exact_div(self)

    def theta(self):
        """The operator q d/dq (coefficientwise multiplication by the exponent)."""
        out = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return QExpansion(self.val, out, self.prec)

    # -- comparison / display

    def agrees_with(self, other, prec=None):
        """Coefficientwise agreement over the shared known window."""
        bound = min(self.prec, other.prec)
        if prec is not None:
            bound = min(bound, prec)
        lo = min(self.val, other.val)
        for n in range(lo, bound):
            a = self.coeffs[n - self.val] if self.val <= n < self.val + len(self.coeffs) else 0
            b = other.coeffs[n - other.val] if other.val <= n < other.val + len(other.coeffs) else 0
            if a != b:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.val == other.val and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.val, tuple(self.coeffs), self.prec))

    def __str__(self):
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.val + i
            if e == 0:
                body = str(c)
            else:
                var = "q" if e == 1 else "q^%d" % e
                if c == 1:
                    body = var
                elif c == -1:
                    body = "-" + var
                else:
                    body = "%s*%s" % (c, var)
            pieces.append(body)
        if not pieces:
            return "O(q^%d)" % self.prec
        out = pieces[0]
        for body in pieces[1:]:
            out += " - " + body[1:] if body.startswith("-") else " + " + body
        return out + " + O(q^%d)" % self.prec

    def __repr__(self):
        return "QExpansion(%s)" % self

    def to_dict(self):
        return {
            "valuation": self.val,
            "precision": self.prec,
            "coefficients": [
                c if isinstance(c, int) else [c.numerator, c.denominator] for c in self.coeffs
            ],
        }

    @classmethod
    def from_dict(cls, d):
        coeffs = [c if isinstance(c, int) else Fraction(c[0], c[1]) for c in d["coefficients"]]
        return cls(d["valuation"], coeffs, d["precision"])


# ---------------------------------------------------------------------------
# divisor sums and the classical expansions


def sigma(k, n):
    """Sum of k-th powers of the divisors of n, by trial division."""
    if k < 1:
        raise ValueError("sigma exponent must be >= 1, got %r" % (k,))
    if n < 1:
        raise ValueError("sigma argument must be >= 1, got %r" % (n,))
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein(weight, N):
    """Normalized Eisenstein series of weight 4 or 6 to precision N."""
    if N < 1:
        raise ValueError("precision must be >= 1")
    if weight == 4:
        scale, k = 240, 3
    elif weight == 6:
        scale, k = -504, 5
    else:
        raise ValueError("unsupported Eisenstein weight %r (need 4 or 6)" % (weight,))
    coeffs = [1] + [scale * sigma(k, n) for n in range(1, N)]
    return QExpansion(0, coeffs, N)


def euler_product(N):
    """prod_{n>=1} (1 - q^n) to precision N, via the pentagonal number expansion."""
    coeffs = [0] * N
    if N > 0:
        coeffs[0] = 1
    m = 1
    while True:
        p1 = m * (3 * m - 1) // 2
        p2 = m * (3 * m + 1) // 2
        if p1 >= N and p2 >= N:
            break
        s = -1 if m % 2 else 1
        if p1 < N:
            coeffs[p1] = s
        if p2 < N:
            coeffs[p2] = s
        m += 1
    return QExpansion(0, coeffs, N)


def discriminant_qexp(N):
    """Delta = (c4^3 - c6^2)/1728 to precision N, with the division checked exact."""
    if N < 1:
        raise ValueError("precision must be >= 1")
    c4 = eisenstein(4, N)
    c6 = eisenstein(6, N)
    return (c4 ** 3 - c6 ** 2).exact_scalar_div(1728)


def discriminant_eta_product(N):
    """Delta = q * prod(1-q^n)^24 to precision N (the independent route)."""
    if N < 1:
        raise ValueError("precision must be >= 1")
    if N == 1:
        return QExpansion.zero(1)
    unit = euler_product(N - 1) ** 24
    return QExpansion(1, unit.coeffs, N)


def j_qexp(N):
    """The j-invariant c4^3/Delta as a Laurent expansion with valuation -1.

    The requested precision N bounds the exponents of the returned expansion;
    the inputs are computed with enough slack internally.
    """
    if N < 1:
        raise ValueError("precision must be >= 1")
    pad = N + 2
    c4 = eisenstein(4, pad)
    delta = discriminant_qexp(pad)
    j = (c4 ** 3).exact_div(delta)
    return j.truncate(N)
