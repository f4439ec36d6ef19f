"""Pure-Python slope scan, used when the compiled extension is unavailable."""


def scan_slope_pairs(c11, c12, c21, c22, q11, q12, q22, K, W):
    """Scan integer pairs (u1, u2) with u1, u2, -u1-u2 in the box [-K, K]^2.

    Keeps pairs where U^-1 C is integral with entries bounded by W and the
    three edge lengths read off adj(U) Q adj(U)^T are positive.  Pairs where
    the lengths are nonnegative with one of them zero are counted as wall
    hits instead.
    """
    found = []
    hits = 0
    rng = range(-K, K + 1)
    for a1 in rng:
        for b1 in rng:
            for a2 in rng:
                s = a1 + a2
                if s > K or s < -K:
                    continue
                for b2 in rng:
                    s = b1 + b2
                    if s > K or s < -K:
                        continue
                    d = a1 * b2 - a2 * b1
                    if d == 0:
                        continue
                    x11 = b2 * c11 - a2 * c21
                    if x11 % d:
                        continue
                    x12 = b2 * c12 - a2 * c22
                    if x12 % d:
                        continue
                    x21 = a1 * c21 - b1 * c11
                    if x21 % d:
                        continue
                    x22 = a1 * c22 - b1 * c12
                    if x22 % d:
                        continue
                    bound = W * (d if d > 0 else -d)
                    if (abs(x11) > bound or abs(x12) > bound
                            or abs(x21) > bound or abs(x22) > bound):
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
