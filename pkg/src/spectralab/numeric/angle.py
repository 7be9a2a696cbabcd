"""Parse small real expressions such as "pi/7" or "2*atan(3/4)" at p bits."""

import ast

from .bigfloat import context, from_hex

_FUNCS = ("atan", "sqrt", "sin", "cos", "tan", "exp", "log")


def parse_real(text, p):
    s = text.strip()
    if s.lower().lstrip("+-").startswith("0x"):
        return from_hex(s, p)
    ctx = context(p + 10)
    try:
        tree = ast.parse(s, mode="eval")
    except SyntaxError as exc:
        raise ValueError("cannot parse %r" % text) from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            # decimal text is read exactly, not through a binary float
            seg = ast.get_source_segment(s, node) or repr(node.value)
            return ctx.mpf(seg)
        if isinstance(node, ast.Name):
            if node.id == "pi":
                return +ctx.pi
            raise ValueError("unknown name %r" % node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            op = type(node.op)
            if op is ast.Add:
                return a + b
            if op is ast.Sub:
                return a - b
            if op is ast.Mult:
                return a * b
            if op is ast.Div:
                return a / b
            if op is ast.Pow:
                return a ** b
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            f = getattr(ctx, node.func.id)
            return f(ev(node.args[0]))
        raise ValueError("unsupported expression in %r" % text)

    out = context(p)
    return out.mpf(ev(tree))
