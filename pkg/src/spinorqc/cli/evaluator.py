"""Evaluate parsed expressions against the algebra kernel."""

from __future__ import annotations

import math
import os
from fractions import Fraction

from ..algebra import (
    STA,
    Multivector,
    exp_bivector,
    exp_series,
    gamma,
    pseudoscalar,
    to_float,
)
from ..braid import braid_b
from ..errors import ExpDomainError, SpinorQCError
from ..majorana import majorana_set, model
from ..scalar import SQRT2, Scalar, format_coefficient
from ..spinor import P, inner_product
from ..tensor import (
    TensorMultivector,
    as_tensor,
    bell_states,
    state_inner_product,
    tensor,
)
from .parser import (
    Call,
    Let,
    Name,
    Neg,
    Node,
    Num,
    Ox,
    Pow,
    Product,
    Rt2,
    Sum,
    parse_statement,
)

MAX_POWER = 256
MODES = ("exact", "float")


class EvalError(SpinorQCError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.message = message
        self.offset = offset
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"evaluation error{where}: {message}")


def _constants() -> dict[str, object]:
    ms = majorana_set()
    m = model()
    out = {f"g{i}": gamma(i) for i in range(4)}
    out.update(I=pseudoscalar(STA), P=P, B1=braid_b("B1").value, B2=braid_b("B2").value)
    out.update(bell_states())
    out.update(G1=ms.g1, G2=ms.g2, G3=ms.g3, Ge=m.emergent, PM=m.parity)
    return out


CONSTANTS = _constants()
FUNCTIONS = ("rev", "inv", "grade", "exp", "tensor", "N", "ip", "H")


def current_mode() -> str:
    mode = os.environ.get("SPINORQC_MODE", "exact").strip().lower() or "exact"
    if mode not in MODES:
        raise EvalError(f"SPINORQC_MODE must be one of {', '.join(MODES)}, got {mode!r}")
    return mode


def _is_scalar(v) -> bool:
    return isinstance(v, (Scalar, Fraction, int, float))


def _as_multi(v):
    if _is_scalar(v):
        return Multivector.scalar(STA, v)
    return v


def _integer(v, pos) -> int:
    if isinstance(v, Multivector) and set(v.terms) <= {0}:
        v = v.scalar_part()
    if isinstance(v, Scalar) and not v.irr and v.rat.denominator == 1:
        return int(v.rat)
    if isinstance(v, float) and v.is_integer():
        return int(v)
    raise EvalError("expected an integer", pos)


def _scalar_arg(v, pos):
    if isinstance(v, Multivector) and set(v.terms) <= {0}:
        return v.scalar_part()
    if _is_scalar(v):
        return v
    raise EvalError("expected a scalar", pos)


class Evaluator:
    def __init__(self, mode: str | None = None):
        self.mode = mode or current_mode()
        if self.mode not in MODES:
            raise EvalError(f"unknown mode {self.mode!r}")
        self.env: dict[str, object] = {}

    def _lit(self, x):
        return float(x) if self.mode == "float" else Scalar.coerce(x)

    def run(self, source: str | bytes):
        """Evaluate one statement; ``let`` binds and returns the bound value."""
        node = parse_statement(source)
        if isinstance(node, Let):
            if node.name in CONSTANTS or node.name in FUNCTIONS or node.name in ("let", "ox", "rt2"):
                raise EvalError(f"cannot rebind built-in name {node.name!r}", node.pos)
            value = self.eval(node.value)
            self.env[node.name] = value
            return value
        return self.eval(node)

    def eval(self, node: Node):
        try:
            value = self._eval(node)
        except SpinorQCError as exc:
            if isinstance(exc, EvalError):
                raise
            raise EvalError(str(exc), node.pos) from None
        except (ArithmeticError, ValueError) as exc:
            raise EvalError(str(exc), node.pos) from None
        if self.mode == "float" and not _is_scalar(value) and value.is_exact():
            value = to_float(value)
        return value

    def _eval(self, node: Node):
        if isinstance(node, Num):
            return self._lit(node.value)
        if isinstance(node, Rt2):
            return self._lit(SQRT2)
        if isinstance(node, Name):
            if node.name in self.env:
                return self.env[node.name]
            if node.name in CONSTANTS:
                return CONSTANTS[node.name]
            raise EvalError(f"unknown name {node.name!r}", node.pos)
        if isinstance(node, Neg):
            return -self._eval(node.operand)
        if isinstance(node, Sum):
            total = None
            for sign, t in node.terms:
                v = self._eval(t)
                total = (v if sign > 0 else -v) if total is None else (total + v if sign > 0 else total - v)
            return total
        if isinstance(node, Product):
            out = self._eval(node.factors[0])
            for f in node.factors[1:]:
                out = out * self._eval(f)
            return out
        if isinstance(node, Pow):
            if node.exponent > MAX_POWER:
                raise EvalError(f"exponent above {MAX_POWER}", node.pos)
            base = self._eval(node.base)
            return base ** node.exponent
        if isinstance(node, Ox):
            return tensor([_as_multi(self._eval(p)) for p in node.parts])
        if isinstance(node, Call):
            return self._call(node)
        raise EvalError(f"cannot evaluate {type(node).__name__}", node.pos)

    def _call(self, node: Call):
        name, args = node.func, node.args

        def arity(k):
            if len(args) != k:
                raise EvalError(f"{name}() takes {k} argument{'s' if k != 1 else ''}", node.pos)

        if name == "tensor":
            return tensor([_as_multi(self._eval(a)) for a in args])
        if name == "H":
            arity(3)
            a, b, c = (_scalar_arg(self._eval(x), x.pos) for x in args)
            return model(a, b, c).H
        if name in ("rev", "inv", "N"):
            arity(1)
            v = _as_multi(self._eval(args[0]))
            if name == "rev":
                return v.reverse()
            if name == "inv":
                return v.involute()
            return (v.reverse() * v).scalar_part()
        if name == "grade":
            arity(2)
            v = _as_multi(self._eval(args[0]))
            k = _integer(self._eval(args[1]), args[1].pos)
            if not isinstance(v, Multivector):
                raise EvalError("grade() applies to single-slot multivectors", node.pos)
            if not 0 <= k <= v.sig.n:
                raise EvalError(f"grade {k} outside 0..{v.sig.n}", args[1].pos)
            return v.grade(k)
        if name == "exp":
            arity(2)
            k = _integer(self._eval(args[0]), args[0].pos)
            x = _as_multi(self._eval(args[1]))
            try:
                return exp_bivector(k, x)
            except ExpDomainError:
                if self.mode == "float":
                    return exp_series(x, k * math.pi / 4)
                raise
        if name == "ip":
            arity(2)
            a, b = (self._eval(x) for x in args)
            if isinstance(a, TensorMultivector) or isinstance(b, TensorMultivector):
                return state_inner_product(as_tensor(a), as_tensor(b)).normalized
            return inner_product(_as_multi(a), _as_multi(b)).normalized
        raise EvalError(f"unknown function {name!r}", node.pos)


def render(value) -> str:
    if _is_scalar(value):
        return format_coefficient(value)
    return str(value)


def evaluate(source: str | bytes, mode: str | None = None) -> str:
    return render(Evaluator(mode).run(source))

