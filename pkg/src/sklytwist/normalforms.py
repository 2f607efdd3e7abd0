"""Degree-truncated normal forms for graded presentations.

The degree-n slice of the two-sided ideal satisfies
I_n = A_1·I_{n-1} + sum_d R_d·N_{n-d}, so each degree is handled by exact
linear algebra on the small space V_n = Words_n / A_1·I_{n-1}, whose basis is
{(letter, normal word of degree n-1)}.  Dimensions, ideal membership (with
certificates), centrality and regular-sequence checks all come out of the
per-degree reduced echelon data.  This computes exactly
dim A_n = 4^n - rank{u·r·w}, just without materializing the full word space.
"""

from __future__ import annotations

from weakref import WeakKeyDictionary

from sklytwist.freealg import NGENS, NcPoly, Word
from sklytwist.linalg import Echelon, Row, dense_kernel
from sklytwist.presentations import Presentation
from sklytwist.scalars import TowerScalar

Certificate = dict[tuple[int, Word, Word], TowerScalar]


class DegreeBoundExceeded(Exception):
    """Requested degree is beyond the presentation's configured bound."""


class NonCentralInput(Exception):
    """An operation required central elements and was given something else."""


class _Level:
    __slots__ = ("normals", "index", "expansions", "genrows")

    def __init__(self, normals, index, expansions, genrows):
        self.normals: list[Word] = normals
        self.index: dict[Word, int] = index
        # pivot candidate word -> coords over normals (the word's normal form)
        self.expansions: dict[Word, dict[int, TowerScalar]] = expansions
        # generator rows (rel_idx, right word w, vector over candidate columns)
        self.genrows: list[tuple[int, Word, Row]] = genrows


class DegreeEngine:
    """Per-presentation cache of normal-form data, built lazily degree by degree."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.spec = pres.spec
        self._min_rel_degree = min((r.degree() for r in pres.relations), default=2)
        level0 = _Level([()], {(): 0}, {}, [])
        self.levels: list[_Level] = [level0]
        self._word_cache: dict[Word, dict[int, TowerScalar]] = {(): {0: self.spec.one()}}
        self._tagged: dict[int, Echelon] = {}

    # -- construction ----------------------------------------------------------

    def ensure(self, n: int) -> None:
        while len(self.levels) <= n:
            self._build_level(len(self.levels))

    def _build_level(self, n: int) -> None:
        prev = self.levels[n - 1]
        candidates: list[Word] = [(i,) + w for i in range(NGENS) for w in prev.normals]
        cindex = {w: k for k, w in enumerate(candidates)}

        genrows: list[tuple[int, Word, Row]] = []
        for ridx, rel in enumerate(self.pres.relations):
            d = rel.degree()
            if d > n:
                continue
            for w in self.levels[n - d].normals:
                row: Row = {}
                for u, c in rel.terms.items():
                    tail = u[1:] + w
                    tail_coords = self.word_coords(tail)
                    for nidx, cv in tail_coords.items():
                        cand = (u[0],) + prev.normals[nidx]
                        k = cindex[cand]
                        acc = row.get(k)
                        v = c * cv if acc is None else acc + c * cv
                        if v.is_zero():
                            row.pop(k, None)
                        else:
                            row[k] = v
                genrows.append((ridx, w, row))

        ech = Echelon()
        for _, _, row in genrows:
            ech.insert(row)

        pivot_cols = ech.pivots
        normals = [w for k, w in enumerate(candidates) if k not in pivot_cols]
        index = {w: pos for pos, w in enumerate(normals)}
        col_to_norm = {}
        pos = 0
        for k, w in enumerate(candidates):
            if k not in pivot_cols:
                col_to_norm[k] = pos
                pos += 1
        expansions = {
            candidates[piv]: {col_to_norm[c]: -v for c, v in tail.items()}
            for piv, tail in pivot_cols.items()
        }
        self.levels.append(_Level(normals, index, expansions, genrows))

    # -- reduction ---------------------------------------------------------------

    def word_coords(self, word: Word) -> dict[int, TowerScalar]:
        """Coordinates of a word over the normal basis of its degree."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        n = len(word)
        self.ensure(n)
        level = self.levels[n]
        direct = level.index.get(word)
        if direct is not None:
            out = {direct: self.spec.one()}
            self._word_cache[word] = out
            return out
        expansion = level.expansions.get(word)
        if expansion is not None:
            self._word_cache[word] = expansion
            return expansion
        # general word: resolve the first letter against the previous level
        prev = self.levels[n - 1]
        out: dict[int, TowerScalar] = {}
        for nidx, cv in self.word_coords(word[1:]).items():
            cand = (word[0],) + prev.normals[nidx]
            for fidx, fv in self.word_coords(cand).items():
                acc = out.get(fidx)
                v = cv * fv if acc is None else acc + cv * fv
                if v.is_zero():
                    out.pop(fidx, None)
                else:
                    out[fidx] = v
        self._word_cache[word] = out
        return out

    def poly_coords(self, f: NcPoly) -> tuple[int, dict[int, TowerScalar]]:
        """(degree, normal-form coordinates) of a homogeneous polynomial."""
        if f.is_zero():
            return -1, {}
        n = f.degree()
        out: dict[int, TowerScalar] = {}
        for w, c in f.terms.items():
            for idx, cv in self.word_coords(w).items():
                acc = out.get(idx)
                v = c * cv if acc is None else acc + c * cv
                if v.is_zero():
                    out.pop(idx, None)
                else:
                    out[idx] = v
        return n, out

    def normal_form(self, f: NcPoly) -> NcPoly:
        n, coords = self.poly_coords(f)
        if n < 0:
            return NcPoly.zero(self.spec)
        normals = self.levels[n].normals
        return NcPoly(self.spec, {normals[idx]: c for idx, c in coords.items()})

    def dimension(self, n: int) -> int:
        self.ensure(n)
        return len(self.levels[n].normals)

    # -- membership with certificates ---------------------------------------------

    def contains(self, f: NcPoly) -> bool:
        if f.is_zero():
            return True
        _, coords = self.poly_coords(f)
        return not coords

    def _candidate_vector(self, n: int, f: NcPoly) -> Row:
        """Coordinates of f in V_n = Words_n / A_1·I_{n-1} over the candidate basis."""
        prev = self.levels[n - 1]
        cindex = {
            (i,) + w: k
            for k, (i, w) in enumerate(
                (i, w) for i in range(NGENS) for w in prev.normals
            )
        }
        out: Row = {}
        for word, c in f.terms.items():
            for nidx, cv in self.word_coords(word[1:]).items():
                k = cindex[(word[0],) + prev.normals[nidx]]
                acc = out.get(k)
                v = c * cv if acc is None else acc + c * cv
                if v.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = v
        return out

    def certificate(self, f: NcPoly) -> Certificate | None:
        """Write f as sum of u·r·w over the relations, or None when f is outside
        the ideal.  The certificate re-evaluates to f exactly."""
        if f.is_zero():
            return {}
        if not self.contains(f):
            return None
        return self._certificate_rec(f, f.degree())

    def _certificate_rec(self, f: NcPoly, n: int) -> Certificate:
        if f.is_zero():
            return {}
        if n < self._min_rel_degree:
            raise AssertionError("nonzero residual below relation degree")
        self.ensure(n)
        level = self.levels[n]
        # express [f] in V_n over the generator rows r·w, tracking combinations
        # through negative tag columns (one per generator row, never a pivot)
        ech = self._tagged.get(n)
        if ech is None:
            ech = Echelon(pivot_floor=0)
            for k, (_, _, row) in enumerate(level.genrows):
                ech.insert(dict(row) | {-1 - k: self.spec.one()})
            self._tagged[n] = ech
        red = ech.reduce(self._candidate_vector(n, f))
        if any(col >= 0 for col in red):
            raise AssertionError("membership holds but V_n solve failed")
        lam: dict[int, TowerScalar] = {-1 - col: -c for col, c in red.items()}
        cert: Certificate = {}
        residual = f
        for k, coeff in lam.items():
            ridx, w, _ = level.genrows[k]
            if coeff.is_zero():
                continue
            cert[(ridx, (), w)] = coeff
            residual = residual - coeff * (self.pres.relations[ridx] * NcPoly.word(self.spec, w))
        # the rest lies in A_1·I_{n-1}; split by first letter and recurse
        by_letter: dict[int, dict[Word, TowerScalar]] = {}
        for word, c in residual.terms.items():
            by_letter.setdefault(word[0], {})[word[1:]] = c
        for letter, terms in by_letter.items():
            part = NcPoly(self.spec, terms)
            for (ridx, u, w), c in self._certificate_rec(part, n - 1).items():
                key = (ridx, (letter,) + u, w)
                acc = cert.get(key)
                v = c if acc is None else acc + c
                if v.is_zero():
                    cert.pop(key, None)
                else:
                    cert[key] = v
        return cert

    # -- centrality ------------------------------------------------------------------

    def commutators_vanish(self, z: NcPoly) -> bool:
        for j in range(NGENS):
            xj = NcPoly.gen(self.spec, j)
            if not self.contains(z * xj - xj * z):
                return False
        return True

    def central_subspace(self, d: int) -> list[NcPoly]:
        """Basis of the degree-d normal forms whose commutators with every
        generator land in the ideal."""
        self.ensure(d + 1)
        normals = self.levels[d].normals
        hd1 = len(self.levels[d + 1].normals)
        zero = self.spec.zero()
        rows_per_normal = []
        for w in normals:
            wpoly = NcPoly.word(self.spec, w)
            entries: list[TowerScalar] = []
            for j in range(NGENS):
                xj = NcPoly.gen(self.spec, j)
                _, coords = self.poly_coords(wpoly * xj - xj * wpoly)
                col = [zero] * hd1
                for idx, c in coords.items():
                    col[idx] = c
                entries.extend(col)
            rows_per_normal.append(entries)
        # kernel of the (len normals) x (4*hd1) map, i.e. of its transpose action
        ncols = len(normals)
        matrix = [[rows_per_normal[c][r] for c in range(ncols)] for r in range(4 * hd1)]
        kernel = dense_kernel(matrix, self.spec)
        basis = []
        for vec in kernel:
            terms = {normals[k]: c for k, c in enumerate(vec) if not c.is_zero()}
            basis.append(NcPoly(self.spec, terms))
        return basis


_ENGINES: "WeakKeyDictionary[Presentation, DegreeEngine]" = WeakKeyDictionary()


def engine_for(pres: Presentation) -> DegreeEngine:
    engine = _ENGINES.get(pres)
    if engine is None:
        engine = DegreeEngine(pres)
        _ENGINES[pres] = engine
    return engine


def _check_bound(pres: Presentation, n: int) -> None:
    if n > pres.degree_bound:
        raise DegreeBoundExceeded(
            f"degree {n} exceeds the configured bound {pres.degree_bound}"
        )
    if n < 0:
        raise ValueError("degree must be nonnegative")


def homogeneous_dimension(pres: Presentation, n: int) -> int:
    """dim of the degree-n component: 4^n minus the rank of the ideal slice."""
    _check_bound(pres, n)
    return engine_for(pres).dimension(n)


def ideal_membership(
    pres: Presentation, f: NcPoly
) -> tuple[bool, Certificate | None]:
    """Whether homogeneous f lies in the two-sided ideal of the relations, with
    an exact combination certificate when it does."""
    if f.is_zero():
        return True, {}
    if not f.is_homogeneous():
        raise ValueError("membership requires a homogeneous polynomial")
    _check_bound(pres, f.degree())
    cert = engine_for(pres).certificate(f)
    if cert is None:
        return False, None
    return True, cert


def evaluate_certificate(pres: Presentation, cert: Certificate) -> NcPoly:
    """Sum of coeff·u·r·w over the certificate, for exact re-evaluation."""
    total = NcPoly.zero(pres.spec)
    for (ridx, u, w), c in cert.items():
        term = NcPoly.word(pres.spec, u) * pres.relations[ridx] * NcPoly.word(pres.spec, w)
        total = total + c * term
    return total


def is_central(pres: Presentation, z: NcPoly) -> bool:
    """True iff z commutes with every generator modulo the ideal (exact in
    degree deg z + 1)."""
    if z.is_zero():
        return True
    if not z.is_homogeneous():
        raise ValueError("centrality requires a homogeneous polynomial")
    _check_bound(pres, z.degree() + 1)
    return engine_for(pres).commutators_vanish(z)


def central_subspace(pres: Presentation, d: int) -> list[NcPoly]:
    _check_bound(pres, d + 1)
    return engine_for(pres).central_subspace(d)


def hilbert_values(pres: Presentation, bound: int) -> list[int]:
    return [homogeneous_dimension(pres, n) for n in range(bound + 1)]


def regular_sequence_check(
    pres: Presentation, z1: NcPoly, z2: NcPoly, bound: int
) -> bool:
    """Hilbert-series test that (z1, z2) is a regular sequence of central
    degree-2 elements: dims of the quotients must drop by the (1-t^2) factors."""
    for z in (z1, z2):
        if z.degree() != 2:
            raise NonCentralInput("regular-sequence inputs must have degree 2")
        if not is_central(pres, z):
            raise NonCentralInput("regular-sequence inputs must be central")
    _check_bound(pres, bound)
    h = hilbert_values(pres, bound)
    q1 = pres.quotient([z1], label=f"{pres.label}/(z1)")
    q12 = pres.quotient([z1, z2], label=f"{pres.label}/(z1,z2)")
    h1 = hilbert_values(q1, bound)
    h12 = hilbert_values(q12, bound)

    def at(values: list[int], n: int) -> int:
        return values[n] if n >= 0 else 0

    for n in range(bound + 1):
        if h1[n] != h[n] - at(h, n - 2):
            return False
        if h12[n] != h[n] - 2 * at(h, n - 2) + at(h, n - 4):
            return False
    return True
