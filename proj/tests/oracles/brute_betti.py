#!/usr/bin/env python3
"""Brute-force graded Betti numbers by iterated minimal syzygies.

Independent of the C++ Koszul engine: the homogeneous ideal I of the
embedded curve is computed degree by degree as the kernel of evaluating
forms of S = F_p[z_0..z_n] at sample points, then a minimal graded free
resolution of S/I is built by computing kernels of the presentation maps
and counting minimal generators in each degree.

Usage: brute_betti.py [prime ...]
Prints beta_{i,j} for the twisted cubic, the elliptic normal quartic and
the elliptic normal quintic (curve y^2 = x^3 + 2x + 3).
"""
import itertools
import sys


def rank_mod(rows, p):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def nullspace_mod(rows, ncols, p):
    """Basis of {x : x . row = 0 for all rows}, i.e. kernel of the matrix."""
    m = [list(r) for r in rows]
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivcols):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


def monomials(nvars, deg):
    if deg < 0:
        return []
    return [m for m in itertools.product(range(deg + 1), repeat=nvars) if sum(m) == deg]


def curve_points(A, B, p, count):
    pts = []
    for x in range(p):
        rhs = (x * x * x + A * x + B) % p
        for y in range(p):
            if (y * y - rhs) % p == 0:
                pts.append((x, y))
                if len(pts) >= count:
                    return pts
    return pts


def rr_sections(d):
    """Exponents (i, k) of x^i y^k with pole order 2i + 3k <= d, k in {0,1}."""
    out = []
    for order in range(d + 1):
        if order == 1:
            continue
        if order % 2 == 0:
            out.append((order // 2, 0))
        else:
            out.append(((order - 3) // 2, 1))
    return out


def embedded_points(kind, d, p, npts):
    if kind == "rnc":
        return [[pow(u, j, p) for j in range(d + 1)] for u in range(npts)]
    pts = curve_points(2, 3, p, npts)
    secs = rr_sections(d)
    return [[(pow(x, i, p) * pow(y, k, p)) % p for (i, k) in secs] for (x, y) in pts]


class Resolution:
    def __init__(self, pts, p, maxdeg):
        self.p = p
        self.n = len(pts[0])
        self.pts = pts
        self.maxdeg = maxdeg
        self.mon = {j: monomials(self.n, j) for j in range(maxdeg + 1)}
        self.monidx = {j: {m: i for i, m in enumerate(self.mon[j])} for j in self.mon}

    def ideal_in_degree(self, j):
        rows = []
        for m in self.mon[j]:
            row = []
            for pt in self.pts:
                v = 1
                for var, e in enumerate(m):
                    if e:
                        v = v * pow(pt[var], e, self.p) % self.p
                row.append(v)
            rows.append(row)
        # forms f = sum c_m m vanishing at all points: kernel of rows^T
        cols = list(zip(*rows))
        return nullspace_mod(cols, len(self.mon[j]), self.p)

    def times_vars(self, vecs, gens_deg, j):
        """Multiply elements of sum_g S_{j-1-deg g} by each variable."""
        out = []
        for v in vecs:
            for var in range(self.n):
                w = [0] * self.dim_free(gens_deg, j)
                for (g, m), c in self.decode(v, gens_deg, j - 1):
                    if not c:
                        continue
                    m2 = list(m)
                    m2[var] += 1
                    w[self.index(gens_deg, j, g, tuple(m2))] = c
                out.append(w)
        return out

    def layout(self, gens_deg, j):
        offs = []
        o = 0
        for dg in gens_deg:
            offs.append(o)
            o += len(self.mon.get(j - dg, [])) if j - dg >= 0 else 0
        return offs, o

    def dim_free(self, gens_deg, j):
        return self.layout(gens_deg, j)[1]

    def index(self, gens_deg, j, g, m):
        offs, _ = self.layout(gens_deg, j)
        return offs[g] + self.monidx[j - gens_deg[g]][m]

    def decode(self, v, gens_deg, j):
        offs, _ = self.layout(gens_deg, j)
        for g, dg in enumerate(gens_deg):
            if j - dg < 0:
                continue
            for k, m in enumerate(self.mon[j - dg]):
                yield (g, m), v[offs[g] + k]

    def minimal_generators(self, sub, gens_deg, prev_sub, j):
        """Pick a complement of S_1 * sub_{j-1} inside sub_j."""
        generated = self.times_vars(prev_sub, gens_deg, j) if prev_sub else []
        base = rank_mod(generated, self.p) if generated else 0
        chosen = []
        current = list(generated)
        r = base
        for v in sub:
            trial = current + [v]
            r2 = rank_mod(trial, self.p)
            if r2 > r:
                chosen.append(v)
                current = trial
                r = r2
        return chosen

    def image_map(self, gens, gens_deg, target_deg, j):
        """Matrix of F_i,j -> F_{i-1},j where generator g maps to gens[g]."""
        rows = []
        for g, dg in enumerate(gens_deg):
            if j - dg < 0:
                continue
            for m in self.mon[j - dg]:
                w = [0] * self.dim_free(target_deg, j)
                for (h, mm), c in self.decode(gens[g], target_deg, dg):
                    if not c:
                        continue
                    prod = tuple(a + b for a, b in zip(m, mm))
                    w[self.index(target_deg, j, h, prod)] = (w[self.index(target_deg, j, h, prod)] + c) % self.p
                rows.append(w)
        return rows

    def betti(self, imax):
        table = {(0, 0): 1}
        # stage 1: generators of I
        gens_prev_deg = [0]
        sub = {j: self.ideal_in_degree(j) for j in range(1, self.maxdeg + 1)}
        stage = 1
        while stage <= imax:
            gens, gdeg = [], []
            prev = []
            for j in range(1, self.maxdeg + 1):
                chosen = self.minimal_generators(sub.get(j, []), gens_prev_deg, prev, j)
                if chosen:
                    table[(stage, j)] = len(chosen)
                gens.extend(chosen)
                gdeg.extend([j] * len(chosen))
                prev = sub.get(j, [])
            if not gens:
                break
            # syzygies of the chosen generators
            newsub = {}
            for j in range(1, self.maxdeg + 1):
                rows = self.image_map(gens, gdeg, gens_prev_deg, j)
                if not rows:
                    continue
                # kernel of x -> x * rows
                ncols = len(rows)
                cols = [list(c) for c in zip(*rows)]
                newsub[j] = nullspace_mod(cols, ncols, self.p)
            sub = newsub
            gens_prev_deg = gdeg
            stage += 1
        return table


def main():
    primes = [int(a) for a in sys.argv[1:]] or [10007, 10009]
    cases = [("rnc", 3, 3, 5), ("elliptic", 4, 2, 6), ("elliptic", 5, 3, 6)]
    for p in primes:
        for kind, d, imax, maxdeg in cases:
            pts = embedded_points(kind, d, p, 8 * d * maxdeg)
            res = Resolution(pts, p, maxdeg)
            table = res.betti(imax)
            entries = ", ".join(f"b{i},{j}={v}" for (i, j), v in sorted(table.items()))
            print(f"p={p} {kind} d={d}: {entries}")


if __name__ == "__main__":
    main()
