"""Density oracle: classify the whole space of Eisenstein quartics by
adaptive refinement of coefficient residue classes, and convert class
measures to field counts through the density relation

    #Sigma_m^G = #Aut(G) * q^(m+2) * mu(P_m^G) / (q - 1).

A node of the refinement tree fixes the first c_i Teichmueller digits of
each coefficient a_i (with the Eisenstein constraints built into the roots
of the tree).  Three sound certificates drive the recursion, all computed
from integer valuation data of the node's zero-extended representative:

* disc certificate: v(disc) is constant on the node once it is below every
  monomial's perturbation bound; with 2e+1 digits of headroom the square
  class of disc is constant as well.
* Krasner certificate: with delta = min_i(4 c_i + i), the valuation any
  member's value perturbation can have at a root, and D the largest root
  distance of the representative (read off the Newton polygon of
  f(Z + pi)/Z, whose vertex valuations are exact because competing terms
  differ mod 4), the condition delta > 4D forces a perfect matching of
  roots between any two members, each within Krasner distance, so the node
  is constant on the full field-isomorphism class.
* tower certificate: when every member visibly fails the one-automorphism
  valuation pattern, the classification only needs the square class of
  disc (V4 when square) and, for the C4/D4 split, the square class of
  disc * (w^2 - 4 a0) for the unique root w of the resolvent cubic; w is
  pinned by a Hensel window, so stability follows from coefficient-level
  perturbation bounds far shallower than the Krasner depth.

delta grows whenever the weakest coordinate is refined and all thresholds
are bounded in terms of 8e+3, so the recursion terminates.
"""

from __future__ import annotations

import os
from fractions import Fraction

from ..errors import FormulationMismatch, NonIntegralCount
from ..padic.field import LocalField, field_from_spec
from ..padic.quartic import (
    EisensteinQuartic,
    classify_by_invariants,
    classify_quartic,
    cubic_k_roots,
    disc_raw,
    disc_valuation,
    resolvent_cubic,
)
from ..params import GroupTag, aut_order

# discriminant monomials of X^4 + p X^3 + q X^2 + r X + s as
# (integer coefficient, (exp_s, exp_r, exp_q, exp_p)) in the a0,a1,a2,a3 order
_DISC_MONOMIALS = (
    (256, (3, 0, 0, 0)),
    (-192, (2, 1, 0, 1)),
    (-128, (2, 0, 2, 0)),
    (144, (1, 2, 1, 0)),
    (-27, (0, 4, 0, 0)),
    (144, (2, 0, 1, 2)),
    (-6, (1, 2, 0, 2)),
    (-80, (1, 1, 2, 1)),
    (18, (0, 3, 1, 1)),
    (16, (1, 0, 4, 0)),
    (-4, (0, 2, 3, 0)),
    (-27, (2, 0, 0, 4)),
    (18, (1, 1, 1, 3)),
    (-4, (0, 3, 0, 3)),
    (-4, (1, 0, 3, 2)),
    (1, (0, 2, 2, 2)),
)


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


_INF = 10**9


def _build_bound_table(e: int):
    """Perturbation terms of the discriminant under coefficient changes.

    For each monomial k * prod a_j^alpha_j and each nonzero beta <= alpha the
    binomial term k * prod C(alpha_j, beta_j) * a^(alpha-beta) * delta^beta
    has valuation >= e*v2(k*prod C) + sum_j ((alpha_j-beta_j) vhat_j + beta_j c_j).
    Entries dominated for every admissible (vhat, c) are discarded.
    """
    from itertools import product as iproduct
    from math import comb

    raw = []
    for k, exps in _DISC_MONOMIALS:
        for beta in iproduct(*(range(a + 1) for a in exps)):
            if not any(beta):
                continue
            c = abs(k)
            for a, b in zip(exps, beta):
                c *= comb(a, b)
            const = _v2(c) * e
            amb = tuple(a - b for a, b in zip(exps, beta))
            raw.append((const, amb, beta))
    kept = []
    for cand in raw:
        dominated = False
        for other in raw:
            if other is cand or other == cand:
                continue
            if (
                other[0] <= cand[0]
                and all(
                    oa + ob <= ca + cb and ob <= cb
                    for oa, ob, ca, cb in zip(other[1], other[2], cand[1], cand[2])
                )
                and other != cand
            ):
                dominated = True
                break
        if not dominated:
            kept.append(cand)
    return kept


class _Enumerator:
    def __init__(self, field: LocalField, m_max: int, cross_check_every: int = 64):
        self.K = field
        self.q = field.q
        self.e = field.e_abs
        self.m_max = m_max
        self.cross_check_every = cross_check_every
        self.measures: dict[tuple[int, GroupTag], Fraction] = {}
        self.dropped = Fraction(0)
        self.leaves = 0
        self.pruned = 0
        self.max_depth = 0
        self.cross_checked = 0
        self._mono_vk = [_v2(abs(k)) * field.e_abs for k, _ in _DISC_MONOMIALS]
        self._bound_table = _build_bound_table(field.e_abs)

    # -- integer-only node analysis --------------------------------------

    @staticmethod
    def _rep_val(d):
        for i, t in enumerate(d):
            if t:
                return i
        return _INF

    def _disc_monomial_val(self, vrep):
        best, unique = _INF, True
        for (k, exps), vk in zip(_DISC_MONOMIALS, self._mono_vk):
            tot = vk
            for a, v in zip(exps, vrep):
                if a:
                    if v >= _INF:
                        tot = _INF
                        break
                    tot += a * v
            if tot < best:
                best, unique = tot, True
            elif tot == best:
                unique = False
        return best, unique

    def _disc_bound(self, cs, vh):
        v0, v1, v2, v3 = vh
        c0, c1, c2, c3 = cs
        best = _INF
        for const, amb, beta in self._bound_table:
            cand = (
                const
                + amb[0] * v0 + amb[1] * v1 + amb[2] * v2 + amb[3] * v3
                + beta[0] * c0 + beta[1] * c1 + beta[2] * c2 + beta[3] * c3
            )
            if cand < best:
                best = cand
        return best

    def _distance_polygon_max(self, vrep):
        """Largest root distance of the representative, in stem units (exact)."""
        e = self.e
        v1, v2, v3 = vrep[1], vrep[2], vrep[3]
        y0 = min(
            4 * v1 if v1 < _INF else _INF,
            4 * (v2 + e) + 1 if v2 < _INF else _INF,
            4 * v3 + 2 if v3 < _INF else _INF,
            8 * e + 3,
        )
        y1 = min(4 * v2 if v2 < _INF else _INF, 4 * v3 + 1 if v3 < _INF else _INF, 4 * e + 2)
        y2 = min(4 * v3 if v3 < _INF else _INF, 8 * e + 1)
        best = Fraction(y0 - y1, 1) if y1 < _INF else Fraction(-1)
        if y2 < _INF:
            cand = Fraction(y0 - y2, 2)
            if cand > best:
                best = cand
        cand = Fraction(y0, 3)
        if cand > best:
            best = cand
        return best

    def _visibly_non_one_aut(self, cs, vrep, m) -> bool:
        """True when every member of the node fails the 1-Aut valuation pattern."""
        e = self.e
        if m % 2 != 0 or not (4 <= m <= 6 * e + 2):
            return True
        v1, v2, v3 = vrep[1], vrep[2], vrep[3]
        c1, c3 = cs[1], cs[3]
        lo2 = -(m // -6)
        if v2 < lo2:
            return True
        if m % 4 == 0:
            thr = m // 4
            if v1 < thr or (v1 >= _INF and c1 > thr) or (thr < v1 < _INF):
                return True
            if v3 < thr:
                return True
        else:
            thr = (m - 2) // 4
            if v3 < thr or (v3 >= _INF and c3 > thr) or (thr < v3 < _INF):
                return True
            if v1 < (m + 2) // 4:
                return True
        return False

    # -- main loop ---------------------------------------------------------

    def run(self, roots):
        q, m_max, e = self.q, self.m_max, self.e
        stack = list(roots)
        while stack:
            digits = stack.pop()
            cs = (len(digits[0]), len(digits[1]), len(digits[2]), len(digits[3]))
            depth = cs[0] + cs[1] + cs[2] + cs[3]
            if depth > self.max_depth:
                self.max_depth = depth
            vrep = (
                1,
                self._rep_val(digits[1]),
                self._rep_val(digits[2]),
                self._rep_val(digits[3]),
            )
            vh = tuple(min(v, c) for v, c in zip(vrep, cs))
            bound = self._disc_bound(cs, vh)
            m_lo, unique = self._disc_monomial_val(vrep)
            m_rep = m_lo if unique else None
            if m_rep is None and m_lo < bound:
                m_rep = disc_valuation(self._build(digits))
            if m_rep is not None and m_rep < bound:
                if m_rep > m_max:
                    self.dropped += Fraction(1, q**depth)
                    self.pruned += 1
                    continue
            else:
                m_rep = None
            delta = min(4 * cs[0], 4 * cs[1] + 1, 4 * cs[2] + 2, 4 * cs[3] + 3)
            if delta > 4 * self._distance_polygon_max(vrep):
                fq = self._build(digits)
                self._add_leaf(classify_by_invariants(fq, m_rep), fq, depth)
                continue
            if m_rep is not None and bound >= m_rep + 2 * e + 1 and self._visibly_non_one_aut(
                cs, vrep, m_rep
            ):
                got = self._try_tower_cert(digits, cs, vh, vrep, m_rep)
                if got is not None:
                    continue
            split = min(range(4), key=lambda i: 4 * cs[i] + i)
            for t in range(q):
                stack.append(
                    tuple(d + (t,) if i == split else d for i, d in enumerate(digits))
                )

    def _try_tower_cert(self, digits, cs, vh, vrep, m):
        """Certify a visibly-non-1-Aut node via square-class windows; None = split."""
        K, R, e = self.K, self.K.ring, self.e
        q = self.q
        depth = sum(cs)
        fq = self._build(digits)
        disc = disc_raw(K, *fq.coeffs())
        if K.is_square(disc):
            self._add_leaf((m, GroupTag.V4), fq, depth)
            return True
        # resolvent-root windows for the C4/D4 split
        c0, c1, c2, c3 = cs
        v0, v1, v2, v3 = vh
        b_r2 = c2
        b_r1 = min(c1 + v3, c3 + v1, c1 + c3, 2 * e + c0)
        b_r0 = min(
            e + v3 + v0 + c3,
            v0 + 2 * c3,
            c0 + 2 * v3,
            e + v3 + c3 + c0,
            e + v1 + c1,
            2 * c1,
            2 * e + v0 + c2,
            2 * e + v2 + c0,
            2 * e + c2 + c0,
        )
        rescubic = resolvent_cubic(fq)
        roots = cubic_k_roots(K, rescubic, 24 * e + 32)
        if len(roots) != 1:
            raise FormulationMismatch(
                f"resolvent of a certified {{C4,D4}} class has {len(roots)} roots in K"
            )
        w = roots[0]
        vw = R.val(w)
        if vw is None:
            vw = 24 * e + 32
        rp = _poly_eval_deriv3(R, rescubic, w)
        v_rp = R.val(rp)
        if v_rp is None:
            return None
        eta_w = min(b_r2 + 2 * vw, b_r1 + vw, b_r0)
        eta_wp = min(b_r2 + vw, b_r1)
        if not (eta_w > 2 * v_rp and eta_wp > v_rp):
            return None
        dw = eta_w - v_rp
        W = R.sub(R.mul(w, w), R.mul(R.from_int(4), fq.a0))
        vW = R.val(W)
        if vW is None:
            return None
        eta_W = min(dw + min(e + vw, dw), 2 * e + c0)
        if eta_W < vW + 2 * e + 1:
            return None
        g = GroupTag.C4 if K.is_square(R.mul(disc, W)) else GroupTag.D4
        self._add_leaf((m, g), fq, depth)
        return True

    def _build(self, digits):
        K = self.K
        return EisensteinQuartic(K, *(K.from_digits(d) for d in digits))

    def _add_leaf(self, mg, fq, depth):
        m, g = mg
        if m > self.m_max:
            self.dropped += Fraction(1, self.q**depth)
            self.pruned += 1
            return
        self.leaves += 1
        if self.cross_check_every and self.leaves % self.cross_check_every == 0:
            full = classify_quartic(fq)
            self.cross_checked += 1
            if full != (m, g):
                raise FormulationMismatch(
                    f"fast classification {(m, g.value)} disagrees with root counting {full}"
                )
        key = (m, g)
        self.measures[key] = self.measures.get(key, Fraction(0)) + Fraction(1, self.q**depth)


def _poly_eval_deriv3(R, poly, x):
    # derivative of a monic cubic [c0, c1, c2, 1]: 3x^2 + 2 c2 x + c1
    three_x2 = R.mul(R.from_int(3), R.mul(x, x))
    two_c2x = R.mul(R.from_int(2), R.mul(poly[2], x))
    return R.add(three_x2, R.add(two_c2x, poly[1]))


def _root_nodes(q: int):
    return [((0, t), (0,), (0,), (0,)) for t in range(1, q)]


_WORKER_STATE = {}


def _worker_init(spec, m_max, cce):
    _WORKER_STATE["field"] = field_from_spec(spec)
    _WORKER_STATE["m_max"] = m_max
    _WORKER_STATE["cce"] = cce


def _worker_run(chunk):
    enum = _Enumerator(_WORKER_STATE["field"], _WORKER_STATE["m_max"], _WORKER_STATE["cce"])
    enum.run(chunk)
    return (
        {(m, g.value): v for (m, g), v in enum.measures.items()},
        enum.dropped,
        enum.leaves,
        enum.pruned,
        enum.max_depth,
        enum.cross_checked,
    )


def density_measures(
    field: LocalField, m_max: int | None = None, jobs: int = 1, cross_check_every: int = 64
):
    """Exact measures mu(P_m^G) per (m, group) plus enumeration metadata."""
    e = field.e_abs
    if m_max is None:
        m_max = 8 * e + 3
    q = field.q
    roots = _root_nodes(q)
    if jobs > 1 and field.spec is not None and hasattr(os, "fork"):
        from multiprocessing import get_context

        frontier = []
        for digits in roots:
            for t in range(q):
                frontier.append((digits[0], digits[1] + (t,), digits[2], digits[3]))
        chunks = [frontier[i::jobs] for i in range(jobs)]
        with get_context("fork").Pool(
            jobs, initializer=_worker_init, initargs=(field.spec, m_max, cross_check_every)
        ) as pool:
            parts = pool.map(_worker_run, chunks)
        measures: dict[tuple[int, GroupTag], Fraction] = {}
        dropped, leaves, pruned, max_depth, checked = Fraction(0), 0, 0, 0, 0
        for meas, drop, lv, pr, md, cc in parts:
            for (m, gval), v in meas.items():
                key = (m, GroupTag(gval))
                measures[key] = measures.get(key, Fraction(0)) + v
            dropped += drop
            leaves += lv
            pruned += pr
            checked += cc
            max_depth = max(max_depth, md)
    else:
        enum = _Enumerator(field, m_max, cross_check_every)
        enum.run(roots)
        measures, dropped = enum.measures, enum.dropped
        leaves, pruned, max_depth = enum.leaves, enum.pruned, enum.max_depth
        checked = enum.cross_checked
    total = sum(measures.values(), Fraction(0)) + dropped
    expected = Fraction(q - 1, q**5)
    if total != expected:
        raise NonIntegralCount(
            f"density enumeration lost measure: {total} != (q-1)/q^5 = {expected}"
        )
    meta = {
        "leaves": leaves,
        "pruned": pruned,
        "max_depth": max_depth,
        "m_max": m_max,
        "root_count_cross_checks": checked,
        "certification": "monomial disc bound + krasner delta>4D + resolvent windows",
    }
    return measures, meta


def density_counts(
    field: LocalField, m_max: int | None = None, jobs: int = 1, cross_check_every: int = 64
):
    """Field counts per (m, group) from Eisenstein-polynomial densities."""
    measures, meta = density_measures(field, m_max, jobs, cross_check_every)
    q = field.q
    counts: dict[tuple[int, GroupTag], int] = {}
    for (m, g), mu in sorted(measures.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        val = aut_order(g) * Fraction(q) ** (m + 2) * mu / (q - 1)
        if val.denominator != 1:
            raise NonIntegralCount(f"density count at (m={m}, {g.value}) is {val}")
        counts[(m, g)] = int(val)
    return counts, meta
