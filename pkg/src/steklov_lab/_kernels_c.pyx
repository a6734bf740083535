# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-face mesh kernels; same contracts as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline double _heron(double x, double y, double z) nogil:
    cdef double a = x, b = y, c = z, tmp
    if a < b:
        tmp = a; a = b; b = tmp
    if b < c:
        tmp = b; b = c; c = tmp
    if a < b:
        tmp = a; a = b; b = tmp
    tmp = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if tmp < 0:
        tmp = 0
    return 0.25 * sqrt(tmp)


def face_geometry(lengths):
    cdef double[:, ::1] L = np.ascontiguousarray(lengths, dtype=np.float64)
    cdef Py_ssize_t n = L.shape[0], f
    area_arr = np.empty(n)
    cot_arr = np.empty((n, 3))
    cdef double[::1] area = area_arr
    cdef double[:, ::1] cot = cot_arr
    cdef double a2, b2, c2, A
    with nogil:
        for f in range(n):
            A = _heron(L[f, 0], L[f, 1], L[f, 2])
            area[f] = A
            a2 = L[f, 0] * L[f, 0]
            b2 = L[f, 1] * L[f, 1]
            c2 = L[f, 2] * L[f, 2]
            cot[f, 0] = (b2 + c2 - a2) / (4.0 * A)
            cot[f, 1] = (a2 + c2 - b2) / (4.0 * A)
            cot[f, 2] = (a2 + b2 - c2) / (4.0 * A)
    return area_arr, cot_arr


def levelset_measure(lengths, values, levels):
    cdef double[:, ::1] L = np.ascontiguousarray(lengths, dtype=np.float64)
    cdef double[:, ::1] V = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] T = np.ascontiguousarray(levels, dtype=np.float64)
    cdef Py_ssize_t n = L.shape[0], nt = T.shape[0], f, j
    area_arr = np.zeros(nt)
    cut_arr = np.zeros(nt)
    cdef double[::1] out_a = area_arr
    cdef double[::1] out_c = cut_arr
    cdef int ia, ib, ic, tmp
    cdef double A, fa, fb, fc, bc, ca, ab, t, s, u, d2
    with nogil:
        for f in range(n):
            A = _heron(L[f, 0], L[f, 1], L[f, 2])
            # stable sort of three corners by value
            ia = 0; ib = 1; ic = 2
            if V[f, ib] < V[f, ia]:
                tmp = ia; ia = ib; ib = tmp
            if V[f, ic] < V[f, ib]:
                tmp = ib; ib = ic; ic = tmp
                if V[f, ib] < V[f, ia]:
                    tmp = ia; ia = ib; ib = tmp
            fa = V[f, ia]; fb = V[f, ib]; fc = V[f, ic]
            bc = L[f, ia]; ca = L[f, ib]; ab = L[f, ic]
            for j in range(nt):
                t = T[j]
                if t <= fa:
                    out_a[j] += A
                elif t >= fb and t < fc:
                    s = (fc - t) / (fc - fa)
                    u = (fc - t) / (fc - fb)
                    out_a[j] += A * s * u
                    d2 = s * s * ca * ca + u * u * bc * bc - s * u * (ca * ca + bc * bc - ab * ab)
                    if d2 > 0:
                        out_c[j] += sqrt(d2)
                elif t > fa and t < fb:
                    s = (t - fa) / (fc - fa)
                    u = (t - fa) / (fb - fa)
                    out_a[j] += A * (1.0 - s * u)
                    d2 = s * s * ca * ca + u * u * ab * ab - s * u * (ca * ca + ab * ab - bc * bc)
                    if d2 > 0:
                        out_c[j] += sqrt(d2)
    return area_arr, cut_arr


def boundary_above(edge_lengths, values, levels):
    cdef double[::1] h = np.ascontiguousarray(edge_lengths, dtype=np.float64)
    cdef double[:, ::1] V = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] T = np.ascontiguousarray(levels, dtype=np.float64)
    cdef Py_ssize_t n = h.shape[0], nt = T.shape[0], e, j
    out_arr = np.zeros(nt)
    cdef double[::1] out = out_arr
    cdef double lo, hi, t
    with nogil:
        for e in range(n):
            lo = V[e, 0]; hi = V[e, 1]
            if lo > hi:
                lo, hi = hi, lo
            for j in range(nt):
                t = T[j]
                if lo >= t:
                    out[j] += h[e]
                elif hi >= t:
                    out[j] += h[e] * (hi - t) / (hi - lo)
    return out_arr
