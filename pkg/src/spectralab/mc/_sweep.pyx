# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-site Metropolis sweeps for the log-gas."""

from libc.math cimport exp, fabs, log

cdef inline double _pot(int vkind, double x) nogil:
    if vkind == 0:
        return 0.5 * x * x
    if vkind == 1:
        return x
    return log(1.0 + x * x)


def run_sweeps(double[::1] x, double[::1] normals, double[::1] uniforms,
               double scale, int vkind, double coef, double lo, double hi,
               int nsweeps, int thin, double[::1] out, long out_start):
    """Advance the chain; store every ``thin``-th configuration from out_start.

    Returns (accepted, stored)."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t s, i, j, k = 0
    cdef long accepted = 0
    cdef long stored = 0
    cdef long pos = out_start
    cdef double xi, y, d, dold, delta
    cdef bint tie
    with nogil:
        for s in range(nsweeps):
            for i in range(n):
                xi = x[i]
                y = xi + scale * normals[k]
                if y <= lo or y >= hi:
                    k += 1
                    continue
                delta = 0.0
                tie = False
                for j in range(n):
                    if j == i:
                        continue
                    d = fabs(y - x[j])
                    if d == 0.0:
                        tie = True
                        break
                    dold = fabs(xi - x[j])
                    delta += 2.0 * (log(d) - log(dold))
                if not tie:
                    delta -= coef * (_pot(vkind, y) - _pot(vkind, xi))
                    if delta >= 0.0 or uniforms[k] < exp(delta):
                        x[i] = y
                        accepted += 1
                k += 1
            if thin > 0 and (s + 1) % thin == 0 and out.shape[0] > 0:
                for i in range(n):
                    out[pos + i] = x[i]
                pos += n
                stored += 1
    return accepted, stored
