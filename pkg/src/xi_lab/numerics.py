"""Arbitrary-precision scalar substrate.

Values are mpmath numbers carried together with a conservative absolute
error radius.  Every routine evaluates at ``working_bits + guard_bits`` and
reports an error bound measured at ``working_bits``, so the guard bits absorb
rounding in intermediate steps.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, Union

import mpmath as mp

Number = Union[int, float, complex, str, "mp.mpf", "mp.mpc"]


class XiLabError(Exception):
    """Base class for all library errors."""


class DomainError(XiLabError, ValueError):
    pass


class PoleError(DomainError):
    """Evaluation requested at a pole; ``pole`` names the offending point."""

    def __init__(self, pole: str, message: str | None = None):
        self.pole = pole
        super().__init__(message or f"pole at {pole}")


class PrecisionOverflow(XiLabError, ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    working_bits: int = 128
    target_abs_err: float | None = None
    target_rel_err: float | None = None
    guard_bits: int = 32

    def __post_init__(self) -> None:
        if self.working_bits < 64:
            raise ValueError("working_bits must be >= 64")
        if self.guard_bits < 16:
            raise ValueError("guard_bits must be >= 16")
        for name in ("target_abs_err", "target_rel_err"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def bits(self) -> int:
        """Internal evaluation precision."""
        return self.working_bits + self.guard_bits

    @property
    def ulp(self) -> mp.mpf:
        """Unit roundoff at the working precision."""
        return mp.ldexp(mp.mpf(1), -self.working_bits)

    @property
    def abs_tol(self) -> mp.mpf:
        if self.target_abs_err:
            return mp.mpf(self.target_abs_err)
        return self.ulp

    @property
    def rel_tol(self) -> mp.mpf:
        if self.target_rel_err:
            return mp.mpf(self.target_rel_err)
        return self.ulp

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(
            2 * self.working_bits,
            None if self.target_abs_err is None else self.target_abs_err ** 2,
            None if self.target_rel_err is None else self.target_rel_err ** 2,
            self.guard_bits,
        )

    @contextmanager
    def workprec(self, extra: int = 0) -> Iterator[None]:
        with mp.workprec(self.bits + extra):
            yield


DEFAULT_CONTEXT = PrecisionContext()


def _mpf(x) -> mp.mpf:
    return x if isinstance(x, mp.mpf) else mp.mpf(x)


@dataclass(frozen=True)
class ComplexValue:
    """Complex scalar with an absolute error radius ``err_bound``."""

    re: mp.mpf
    im: mp.mpf = field(default_factory=lambda: mp.mpf(0))
    err_bound: mp.mpf = field(default_factory=lambda: mp.mpf(0))

    def __post_init__(self) -> None:
        if not mp.isfinite(self.err_bound) or self.err_bound < 0:
            raise ValueError(f"invalid err_bound {self.err_bound}")

    @classmethod
    def of(cls, z: Number, err: Number = 0) -> "ComplexValue":
        """Build from any number mpmath understands (exact, unless ``err``)."""
        if isinstance(z, ComplexValue):
            return z
        z = mp.mpmathify(z)
        re, im = (z.real, z.imag) if isinstance(z, mp.mpc) else (z, mp.mpf(0))
        return cls(re, im, abs(_mpf(err)))

    @property
    def value(self) -> mp.mpc:
        return mp.mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> mp.mpf:
        return abs(self.value)

    def conj(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im, self.err_bound)

    def with_err(self, err) -> "ComplexValue":
        return ComplexValue(self.re, self.im, self.err_bound + abs(_mpf(err)))

    def __neg__(self) -> "ComplexValue":
        return ComplexValue(-self.re, -self.im, self.err_bound)

    def _lift(self, other) -> "ComplexValue":
        return other if isinstance(other, ComplexValue) else ComplexValue.of(other)

    # Rounding of the combined value is charged at 2**-(prec-1) of the result.
    def _finish(self, z: mp.mpc, err) -> "ComplexValue":
        err = err + abs(z) * mp.ldexp(mp.mpf(1), 1 - mp.mp.prec)
        return ComplexValue(z.real, z.imag, err)

    def __add__(self, other) -> "ComplexValue":
        o = self._lift(other)
        return self._finish(self.value + o.value, self.err_bound + o.err_bound)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexValue":
        o = self._lift(other)
        return self._finish(self.value - o.value, self.err_bound + o.err_bound)

    def __rsub__(self, other) -> "ComplexValue":
        return self._lift(other) - self

    def __mul__(self, other) -> "ComplexValue":
        o = self._lift(other)
        a, b = self.value, o.value
        err = abs(a) * o.err_bound + abs(b) * self.err_bound + self.err_bound * o.err_bound
        return self._finish(a * b, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexValue":
        o = self._lift(other)
        b = o.value
        if b == 0 or abs(b) <= o.err_bound:
            raise DomainError("division by a value indistinguishable from zero")
        q = self.value / b
        err = (self.err_bound + abs(q) * o.err_bound) / (abs(b) - o.err_bound)
        return self._finish(q, err)

    def __rtruediv__(self, other) -> "ComplexValue":
        return self._lift(other) / self


def as_value(z) -> ComplexValue:
    return z if isinstance(z, ComplexValue) else ComplexValue.of(z)


_ELEMENTARY = {
    "exp": (mp.exp, mp.exp),
    "log": (mp.log, lambda z: 1 / z),
    "sqrt": (mp.sqrt, lambda z: 1 / (2 * mp.sqrt(z))),
    "sin": (mp.sin, mp.cos),
    "cos": (mp.cos, lambda z: -mp.sin(z)),
    "sinh": (mp.sinh, mp.cosh),
    "cosh": (mp.cosh, mp.sinh),
}


def elementary(op_name: str, z, ctx: PrecisionContext = DEFAULT_CONTEXT,
               exponent=None) -> ComplexValue:
    """Evaluate an elementary function on the principal branch.

    ``pow`` requires ``exponent`` and computes ``exp(exponent * log z)``.
    The error bound is first-order propagation of ``z.err_bound`` through the
    derivative plus 4 ulp of the result at the working precision.
    """
    z = as_value(z)
    with ctx.workprec():
        x = z.value
        if not (mp.isfinite(x.real) and mp.isfinite(x.imag)):
            raise DomainError(f"non-finite argument to {op_name}")
        if op_name == "pow":
            if exponent is None:
                raise ValueError("pow needs an exponent")
            w = as_value(exponent)
            if x == 0:
                if w.re > 0:
                    return ComplexValue(mp.mpf(0), mp.mpf(0), mp.mpf(0))
                raise DomainError("log(0) in pow")
            lz = mp.log(x)
            y = mp.exp(w.value * lz)
            deriv_err = abs(y) * (abs(w.value / x) * z.err_bound + abs(lz) * w.err_bound)
        else:
            try:
                f, df = _ELEMENTARY[op_name]
            except KeyError:
                raise ValueError(f"unknown elementary function {op_name!r}") from None
            if op_name == "log" and x == 0:
                raise DomainError("log(0)")
            if op_name in ("log", "sqrt") and z.err_bound and abs(x) <= z.err_bound:
                raise DomainError(f"{op_name} argument indistinguishable from 0")
            y = f(x)
            deriv_err = abs(df(x)) * z.err_bound if z.err_bound else mp.mpf(0)
        y = mp.mpc(y)
        if not (mp.isfinite(y.real) and mp.isfinite(y.imag)):
            raise PrecisionOverflow(f"{op_name} overflowed")
        err = deriv_err + 4 * abs(y) * ctx.ulp
        return ComplexValue(+y.real, +y.imag, err)


def fmt(x, digits: int = 30) -> str:
    """Fixed decimal serialization used by every output file."""
    # mpf(x) must not round at the ambient 53-bit precision
    with mp.workdps(digits + 10):
        x = mp.mpf(x)
        if x == 0:
            return "0"
        return mp.nstr(x, digits, min_fixed=-4, max_fixed=digits, strip_zeros=False)


def parse(s: str, digits: int = 30) -> mp.mpf:
    """Inverse of ``fmt``: exact for any string it produced."""
    with mp.workdps(digits + 10):
        return +mp.mpf(s)
