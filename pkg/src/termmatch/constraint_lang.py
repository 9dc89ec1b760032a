"""Closed predicate language for constraints given as text.

Grammar, parsed with :mod:`ast` and checked against a whitelist::

    expr  := cmp ("and" cmp)*
    cmp   := value (op value)+ | has_property(VAR, "prop")
    value := INT | VAR | sum(VAR) | len(VAR)
    op    := < <= > >= == !=

Variables bound to numeric symbols compare as integers. A comparison whose
operands are not all numbers evaluates to false.
"""
from __future__ import annotations

import ast
import operator

from .errors import ParseError
from .terms import Constraint, Symbol

_COMPARE = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}
_FUNCTIONS = {"sum", "len", "has_property"}


class _NotNumeric(Exception):
    pass


def _number(value):
    if isinstance(value, bool):
        raise _NotNumeric
    if isinstance(value, int):
        return value
    if isinstance(value, Symbol) and value.value is not None:
        return value.value
    raise _NotNumeric


def _check(node, variables, text):
    def fail(message):
        raise ParseError(message, getattr(node, "lineno", 1), getattr(node, "col_offset", 0) + 1)

    if isinstance(node, ast.BoolOp):
        if not isinstance(node.op, ast.And):
            fail("only 'and' is supported")
        for value in node.values:
            _check(value, variables, text)
    elif isinstance(node, ast.Compare):
        for op in node.ops:
            if type(op) not in _COMPARE:
                fail("unsupported comparison")
        for operand in [node.left, *node.comparators]:
            _check_value(operand, variables, fail)
    elif isinstance(node, ast.Call) and getattr(node.func, "id", None) == "has_property":
        args = node.args
        if (
            len(args) != 2
            or node.keywords
            or not isinstance(args[0], ast.Name)
            or not (isinstance(args[1], ast.Constant) and isinstance(args[1].value, str))
        ):
            fail('expected has_property(VAR, "name")')
        variables.add(args[0].id)
    else:
        fail("expected a comparison or has_property(...)")


def _check_value(node, variables, fail):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return
    if isinstance(node, ast.Name):
        variables.add(node.id)
        return
    if (
        isinstance(node, ast.Call)
        and getattr(node.func, "id", None) in ("sum", "len")
        and len(node.args) == 1
        and not node.keywords
        and isinstance(node.args[0], ast.Name)
    ):
        variables.add(node.args[0].id)
        return
    fail("expected an integer, a variable, sum(VAR) or len(VAR)")


def _value(node, subst):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        return _number(subst[node.id])
    bound = subst[node.args[0].id]
    items = bound if isinstance(bound, tuple) else (bound,)
    if node.func.id == "len":
        return len(items)
    return sum(_number(v) for v in items)


def _evaluate(node, subst) -> bool:
    if isinstance(node, ast.BoolOp):
        return all(_evaluate(v, subst) for v in node.values)
    if isinstance(node, ast.Call):
        bound = subst[node.args[0].id]
        items = bound if isinstance(bound, tuple) else (bound,)
        prop = node.args[1].value
        return bool(items) and all(isinstance(v, Symbol) and prop in v.properties for v in items)
    try:
        left = _value(node.left, subst)
        for op, right_node in zip(node.ops, node.comparators):
            right = _value(right_node, subst)
            if not _COMPARE[type(op)](left, right):
                return False
            left = right
    except _NotNumeric:
        return False
    return True


def parse_constraint(text: str) -> Constraint:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"invalid constraint: {exc.msg}", exc.lineno or 1, exc.offset or 1) from None
    variables = set()
    _check(tree.body, variables, text)
    body = tree.body
    return Constraint(lambda **subst: _evaluate(body, subst), variables, source=text.strip())
