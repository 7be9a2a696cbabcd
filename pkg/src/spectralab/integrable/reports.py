"""JSON reports {op, params, residuals, verdict} for the integrable checks."""

import json

from gmpy2 import mpq

from ..numeric import context, fmt_rational


def _plain(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return repr(v)
    if type(v) is type(mpq(0)):
        return fmt_rational(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    try:
        return context(max(53, v.context.prec)).nstr(v, 20)
    except AttributeError:
        return str(v)


def report(op, params, residuals, verdict):
    return {"op": op, "params": _plain(params), "residuals": _plain(residuals),
            "verdict": "pass" if verdict else "fail"}


def dumps(rep):
    return json.dumps(rep, indent=2, sort_keys=True) + "\n"
