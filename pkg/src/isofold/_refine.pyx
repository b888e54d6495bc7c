# cython: language_level=3
"""Dyadic interval evaluation, compiled twin of _refine_py.

Same contract, bit for bit: mantissas stay arbitrary-precision Python
ints, the compilation removes interpreter dispatch from the evaluation
loop and the rounding helpers.
"""

from math import isqrt

OP_LEAF = 0
OP_ADD = 1
OP_SUB = 2
OP_MUL = 3
OP_DIV = 4
OP_SQRT = 5


cdef tuple _round_down(m, long long e, long prec):
    cdef long k = m.bit_length() - prec
    if k <= 0:
        return m, e
    return m >> k, e + k


cdef tuple _round_up(m, long long e, long prec):
    cdef long k = m.bit_length() - prec
    if k <= 0:
        return m, e
    return -((-m) >> k), e + k


def round_down(m, e, prec):
    return _round_down(m, e, prec)


def round_up(m, e, prec):
    return _round_up(m, e, prec)


cdef tuple _add(m1, long long e1, m2, long long e2, long prec, bint up):
    cdef long long gap
    if m1 == 0:
        m, e = m2, e2
    elif m2 == 0:
        m, e = m1, e1
    else:
        if e1 < e2:
            m1, m2 = m2, m1
            e1, e2 = e2, e1
        gap = e1 - e2
        if gap > prec + m2.bit_length() + 8:
            if up:
                r = _round_up(m1, e1, prec)
                return r[0] + 1, r[1]
            r = _round_down(m1, e1, prec)
            return r[0] - 1, r[1]
        m = (m1 << gap) + m2
        e = e2
    if up:
        return _round_up(m, e, prec)
    return _round_down(m, e, prec)


cdef tuple _div(m1, long long e1, m2, long long e2, long prec, bint up):
    cdef bint neg = (m1 < 0) != (m2 < 0)
    a = -m1 if m1 < 0 else m1
    b = -m2 if m2 < 0 else m2
    cdef long long extra = b.bit_length() - a.bit_length()
    if extra < 0:
        extra = 0
    cdef long long shift = prec + 4 + extra
    scaled = a << shift
    q = scaled // b
    if up != neg and q * b != scaled:
        q += 1
    if neg:
        q = -q
    if up:
        return _round_up(q, e1 - e2 - shift, prec)
    return _round_down(q, e1 - e2 - shift, prec)


cdef tuple _sqrt(m, long long e, long prec, bint up):
    cdef long long j
    if m == 0:
        return 0, 0
    j = 2 * (prec + 2) - m.bit_length()
    if j < 0:
        j = 0
    if (e - j) & 1:
        j += 1
    scaled = m << j
    r = isqrt(scaled)
    if up and r * r != scaled:
        r += 1
    if up:
        return _round_up(r, (e - j) >> 1, prec)
    return _round_down(r, (e - j) >> 1, prec)


cdef bint _lt(m1, long long e1, m2, long long e2):
    if e1 >= e2:
        return (m1 << (e1 - e2)) < m2
    return m1 < (m2 << (e2 - e1))


def eval_interval(list ops, list arg1, list arg2, list leaf_num, list leaf_den, long prec):
    """Evaluate a program, returning (lo_m, lo_e, hi_m, hi_e) or None."""
    cdef Py_ssize_t n = len(ops)
    cdef Py_ssize_t i, x, y
    cdef int op
    cdef list lom = [0] * n
    cdef list loe = [0] * n
    cdef list him = [0] * n
    cdef list hie = [0] * n
    for i in range(n):
        op = ops[i]
        if op == OP_LEAF:
            num = leaf_num[arg1[i]]
            den = leaf_den[arg1[i]]
            if den == 1:
                a, b = _round_down(num, 0, prec)
                c, d = _round_up(num, 0, prec)
            else:
                a, b = _div(num, 0, den, 0, prec, False)
                c, d = _div(num, 0, den, 0, prec, True)
        elif op == OP_ADD:
            x = arg1[i]
            y = arg2[i]
            a, b = _add(lom[x], loe[x], lom[y], loe[y], prec, False)
            c, d = _add(him[x], hie[x], him[y], hie[y], prec, True)
        elif op == OP_SUB:
            x = arg1[i]
            y = arg2[i]
            a, b = _add(lom[x], loe[x], -him[y], hie[y], prec, False)
            c, d = _add(him[x], hie[x], -lom[y], loe[y], prec, True)
        elif op == OP_MUL:
            x = arg1[i]
            y = arg2[i]
            mn_m, mn_e = lom[x] * lom[y], loe[x] + loe[y]
            mx_m, mx_e = mn_m, mn_e
            for pm, pe in (
                (lom[x] * him[y], loe[x] + hie[y]),
                (him[x] * lom[y], hie[x] + loe[y]),
                (him[x] * him[y], hie[x] + hie[y]),
            ):
                if _lt(pm, pe, mn_m, mn_e):
                    mn_m, mn_e = pm, pe
                if _lt(mx_m, mx_e, pm, pe):
                    mx_m, mx_e = pm, pe
            a, b = _round_down(mn_m, mn_e, prec)
            c, d = _round_up(mx_m, mx_e, prec)
        elif op == OP_DIV:
            x = arg1[i]
            y = arg2[i]
            lxm, lxe, hxm, hxe = lom[x], loe[x], him[x], hie[x]
            lym, lye, hym, hye = lom[y], loe[y], him[y], hie[y]
            if hym < 0:
                lxm, lxe, hxm, hxe = -hxm, hxe, -lxm, lxe
                lym, lye, hym, hye = -hym, hye, -lym, lye
            if lym <= 0:
                return None
            if lxm >= 0:
                a, b = _div(lxm, lxe, hym, hye, prec, False)
            else:
                a, b = _div(lxm, lxe, lym, lye, prec, False)
            if hxm >= 0:
                c, d = _div(hxm, hxe, lym, lye, prec, True)
            else:
                c, d = _div(hxm, hxe, hym, hye, prec, True)
        else:  # OP_SQRT
            x = arg1[i]
            lm, le = lom[x], loe[x]
            if lm < 0:
                lm, le = 0, 0
            if him[x] < 0:
                return None
            a, b = _sqrt(lm, le, prec, False)
            c, d = _sqrt(him[x], hie[x], prec, True)
        lom[i] = a
        loe[i] = b
        him[i] = c
        hie[i] = d
    i = n - 1
    return lom[i], loe[i], him[i], hie[i]
