# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled slope scan; same contract as the pure-Python version."""


def scan_slope_pairs(long long c11, long long c12, long long c21, long long c22,
                     long long q11, long long q12, long long q22, int K, long long W):
    cdef long long a1, b1, a2, b2, s, d, ad, bound
    cdef long long x11, x12, x21, x22, m11, m12, m22, l1, l2
    cdef list found = []
    cdef long long hits = 0
    for a1 in range(-K, K + 1):
        for b1 in range(-K, K + 1):
            for a2 in range(-K, K + 1):
                s = a1 + a2
                if s > K or s < -K:
                    continue
                for b2 in range(-K, K + 1):
                    s = b1 + b2
                    if s > K or s < -K:
                        continue
                    d = a1 * b2 - a2 * b1
                    if d == 0:
                        continue
                    x11 = b2 * c11 - a2 * c21
                    if x11 % d != 0:
                        continue
                    x12 = b2 * c12 - a2 * c22
                    if x12 % d != 0:
                        continue
                    x21 = a1 * c21 - b1 * c11
                    if x21 % d != 0:
                        continue
                    x22 = a1 * c22 - b1 * c12
                    if x22 % d != 0:
                        continue
                    ad = d if d > 0 else -d
                    bound = W * ad
                    if (x11 > bound or -x11 > bound or x12 > bound or -x12 > bound
                            or x21 > bound or -x21 > bound or x22 > bound or -x22 > bound):
                        continue
                    m11 = b2 * b2 * q11 - 2 * a2 * b2 * q12 + a2 * a2 * q22
                    m22 = b1 * b1 * q11 - 2 * a1 * b1 * q12 + a1 * a1 * q22
                    m12 = -b1 * b2 * q11 + (a1 * b2 + a2 * b1) * q12 - a1 * a2 * q22
                    l1 = m11 - m12
                    l2 = m22 - m12
                    if m12 > 0 and l1 > 0 and l2 > 0:
                        found.append((a1, b1, a2, b2))
                    elif m12 >= 0 and l1 >= 0 and l2 >= 0:
                        hits += 1
    return found, hits
