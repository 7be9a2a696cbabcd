"""Pure-Python single-site Metropolis sweeps (same arithmetic as the compiled kernel)."""

from math import exp, log


def _pot(vkind, x):
    if vkind == 0:
        return 0.5 * x * x
    if vkind == 1:
        return x
    return log(1.0 + x * x)


def run_sweeps(x, normals, uniforms, scale, vkind, coef, lo, hi, nsweeps, thin, out, out_start):
    n = len(x)
    xs = [float(v) for v in x]
    normals = normals.tolist() if hasattr(normals, "tolist") else normals
    uniforms = uniforms.tolist() if hasattr(uniforms, "tolist") else uniforms
    k = 0
    accepted = stored = 0
    pos = out_start
    for s in range(nsweeps):
        for i in range(n):
            xi = xs[i]
            y = xi + scale * normals[k]
            if y <= lo or y >= hi:
                k += 1
                continue
            delta = 0.0
            tie = False
            for j in range(n):
                if j == i:
                    continue
                d = abs(y - xs[j])
                if d == 0.0:
                    tie = True
                    break
                delta += 2.0 * (log(d) - log(abs(xi - xs[j])))
            if not tie:
                delta -= coef * (_pot(vkind, y) - _pot(vkind, xi))
                if delta >= 0.0 or uniforms[k] < exp(delta):
                    xs[i] = y
                    accepted += 1
            k += 1
        if thin > 0 and (s + 1) % thin == 0 and len(out) > 0:
            out[pos:pos + n] = xs
            pos += n
            stored += 1
    x[:] = xs
    return accepted, stored
