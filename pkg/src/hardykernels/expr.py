"""Small expression language for functions, vectors and symbols on the command line.

Accepted syntax (parsed with :mod:`ast`, never evaluated by Python)::

    1 + 2j, z, zbar          numbers, the variable, and 1/z
    + - * / **               arithmetic (integer exponents only)
    b(a)                     Blaschke factor (z - a)/(1 - conj(a) z)
    conj(f)                  boundary conjugate of a rational function
    cyclic()                 the declared-cyclic lacunary stand-in
    [f, g]                   a vector;  [[a, b], [c, d]] a matrix
    diag(f, g, ...)          diagonal matrix
    {a1, a2, ...}            zero set of a finite Blaschke product
    @name                    catalog reference
"""
import ast
import re

from .boundary import BoundaryGrid
from .errors import ParseError
from .hardy import (
    Cyclicity,
    FiniteBlaschke,
    HardyFunction,
    classify_and_factor,
    lacunary_cyclic,
)
from .rational import RationalFn, as_rational, boundary_conjugate
from .toeplitz import MatrixSymbol

_REF = re.compile(r"@([A-Za-z_][A-Za-z0-9_]*)")


class _Cyclic:
    """Rational function carrying a cyclic declaration through products."""

    def __init__(self, value):
        self.value = value

    def _lift(self, other, op):
        if isinstance(other, _Cyclic):
            raise ParseError("cannot combine two cyclic functions")
        return _Cyclic(op(self.value, _rat(other)))

    def __mul__(self, other):
        return self._lift(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._lift(other, lambda a, b: a / b)

    def _unsupported(self, *_):
        raise ParseError("only products and quotients preserve a cyclic declaration")

    __add__ = __radd__ = __sub__ = __rsub__ = __rtruediv__ = __pow__ = _unsupported

    def __neg__(self):
        return _Cyclic(-self.value)


def _rat(x):
    if isinstance(x, HardyFunction):
        return x.value
    if isinstance(x, FiniteBlaschke):
        return x.to_rational()
    return as_rational(x)


def _finish(x):
    if isinstance(x, _Cyclic):
        return classify_and_factor(x.value, Cyclicity.CYCLIC_DECLARED)
    if isinstance(x, list):
        return [_finish(y) for y in x]
    if isinstance(x, HardyFunction) and x.cyclicity is Cyclicity.CYCLIC_DECLARED:
        return x
    if isinstance(x, (FiniteBlaschke, RationalFn, BoundaryGrid)):
        return x
    return _rat(x)


def parse(text, refs=None):
    """Parse ``text`` into a RationalFn, HardyFunction (cyclic), FiniteBlaschke,
    or nested lists of those."""
    refs = refs or {}
    src = _REF.sub(lambda m: f"__ref_{m.group(1)}", text.strip())
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from exc
    return _finish(_Eval(refs).visit(tree.body))


class _Eval(ast.NodeVisitor):
    def __init__(self, refs):
        self.refs = refs

    def generic_visit(self, node):
        raise ParseError(f"unsupported syntax: {type(node).__name__}")

    def visit_Constant(self, node):
        if isinstance(node.value, (int, float, complex)) and not isinstance(node.value, bool):
            return RationalFn.const(node.value)
        raise ParseError(f"unsupported literal {node.value!r}")

    def visit_Name(self, node):
        if node.id == "z":
            return RationalFn.z_power(1)
        if node.id == "zbar":
            return RationalFn.z_power(-1)
        if node.id.startswith("__ref_"):
            name = node.id[len("__ref_"):]
            if name not in self.refs:
                raise ParseError(f"unknown catalog entry @{name}")
            val = self.refs[name]
            if isinstance(val, HardyFunction) and val.cyclicity is Cyclicity.CYCLIC_DECLARED:
                return _Cyclic(val.value)
            if isinstance(val, MatrixSymbol):
                return [list(row) for row in val.entries]
            if isinstance(val, list):
                return list(val)
            return val
        raise ParseError(f"unknown name {node.id!r}")

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -_arith(v)
        if isinstance(node.op, ast.UAdd):
            return v
        raise ParseError("unsupported unary operator")

    def visit_BinOp(self, node):
        a, b = _arith(self.visit(node.left)), self.visit(node.right)
        if isinstance(node.op, ast.Pow):
            k = _int_const(b)
            if isinstance(a, _Cyclic):
                a._unsupported()
            return a ** k
        b = _arith(b)
        ops = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}
        name = ops.get(type(node.op))
        if name is None:
            raise ParseError("unsupported binary operator")
        if isinstance(b, _Cyclic) and not isinstance(a, _Cyclic):
            if name == "__mul__":
                return b * a
            b._unsupported()
        try:
            return getattr(a, name)(b)
        except ZeroDivisionError as exc:
            raise ParseError("division by zero") from exc

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.keywords:
            raise ParseError("only plain calls are supported")
        args = [self.visit(a) for a in node.args]
        fn = node.func.id
        if fn == "b":
            if len(args) != 1:
                raise ParseError("b(a) takes one argument")
            a = _const(args[0])
            if abs(a) >= 1:
                raise ParseError(f"Blaschke zero {a} is not inside the disc")
            return FiniteBlaschke([a]).to_rational()
        if fn == "conj":
            if len(args) != 1:
                raise ParseError("conj takes one argument")
            return boundary_conjugate(_rat(args[0]))
        if fn == "diag":
            n = len(args)
            return [[args[i] if i == j else RationalFn.const(0) for j in range(n)]
                    for i in range(n)]
        if fn == "cyclic":
            terms = int(_const(args[0]).real) if args else 8
            return _Cyclic(lacunary_cyclic(terms).value)
        if fn == "blaschke":
            return FiniteBlaschke([_const(a) for a in args])
        raise ParseError(f"unknown function {fn!r}")

    def visit_List(self, node):
        return [self.visit(e) for e in node.elts]

    visit_Tuple = visit_List

    def visit_Set(self, node):
        zeros = [_const(self.visit(e)) for e in node.elts]
        try:
            return FiniteBlaschke(zeros)
        except Exception as exc:
            raise ParseError(str(exc)) from exc


def _arith(v):
    if isinstance(v, list):
        raise ParseError("arithmetic on vectors is not supported")
    if isinstance(v, FiniteBlaschke):
        return v.to_rational()
    if isinstance(v, HardyFunction):
        return v.value
    return v


def _const(v):
    v = _rat(v)
    if v.num.degree > 0 or v.den.degree > 0:
        raise ParseError("expected a constant")
    return complex(v.num.coeffs[0] / v.den.coeffs[0])


def _int_const(v):
    c = _const(v)
    if c.imag != 0 or c.real != int(c.real):
        raise ParseError("exponent must be an integer")
    return int(c.real)


def as_vector(x):
    if not isinstance(x, list) or any(isinstance(y, list) for y in x):
        raise ParseError("expected a vector like [f, g]")
    return x


def as_matrix(x):
    if isinstance(x, list) and x and all(isinstance(r, list) for r in x):
        if any(len(r) != len(x) for r in x):
            raise ParseError("matrix must be square")
        return x
    if isinstance(x, list):
        raise ParseError("expected a scalar or a square matrix")
    return [[x]]


def as_scalar(x):
    if isinstance(x, list):
        raise ParseError("expected a scalar function")
    return x

