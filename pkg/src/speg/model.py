"""Code parameters, degree distributions, Tanner graphs, schedules, and
their file formats (alist and JSON descriptors)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .field import FieldSpec

ALMOST_UNIFORM = "almost-uniform"

_SUM_TOL = 1e-9
_FRACTION_TOL = 1e-6


@dataclass(frozen=True)
class DegreeDistribution:
    """Node-perspective degree fractions for symbol and constraint nodes.

    ``symbol_node`` is a list of (degree, fraction) pairs with strictly
    increasing degrees summing to 1.  ``constraint_node`` is either a list of
    the same shape or the tag ``"almost-uniform"``, meaning the constraint
    side is whatever near-uniform fill the construction produces.
    """

    symbol_node: tuple
    constraint_node: object = ALMOST_UNIFORM

    def __post_init__(self):
        sym = tuple((int(d), float(f)) for d, f in self.symbol_node)
        object.__setattr__(self, "symbol_node", sym)
        self._check_side(sym, "symbol")
        if self.constraint_node != ALMOST_UNIFORM:
            con = tuple((int(d), float(f)) for d, f in self.constraint_node)
            object.__setattr__(self, "constraint_node", con)
            self._check_side(con, "constraint")

    @staticmethod
    def _check_side(pairs, name):
        if not pairs:
            raise ValueError(f"empty {name}-node distribution")
        degrees = [d for d, _ in pairs]
        fractions = [f for _, f in pairs]
        if any(d < 1 for d in degrees):
            raise ValueError(f"{name}-node degrees must be >= 1")
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise ValueError(f"{name}-node degrees must be strictly increasing")
        if any(f < 0 for f in fractions):
            raise ValueError(f"{name}-node fractions must be >= 0")
        if abs(sum(fractions) - 1.0) > _SUM_TOL:
            raise ValueError(f"{name}-node fractions must sum to 1")

    @property
    def degrees(self) -> tuple:
        return tuple(d for d, _ in self.symbol_node)

    def fraction(self, d: int) -> float:
        for dd, f in self.symbol_node:
            if dd == d:
                return f
        return 0.0

    @property
    def max_degree(self) -> int:
        return self.symbol_node[-1][0]

    def has_explicit_constraints(self) -> bool:
        return self.constraint_node != ALMOST_UNIFORM


@dataclass(frozen=True)
class CodeParams:
    """Code shell: field, node counts, and the symbol degree profile.

    K and N are the binary dimension and length, K = (n - m) p and N = n p.
    The designed rate 1 - m/n is reported without verifying rank(H) = m.
    """

    field: FieldSpec
    n: int
    m: int
    dist: DegreeDistribution

    def __post_init__(self):
        if self.n <= 0 or self.m <= 0 or self.m >= self.n:
            raise ValueError(f"need 0 < m < n, got n={self.n}, m={self.m}")
        # the profile must be realizable: counts are checked by round_counts
        round_counts(self.dist, self.n)

    @property
    def K(self) -> int:
        return (self.n - self.m) * self.field.p

    @property
    def N(self) -> int:
        return self.n * self.field.p

    @property
    def designed_rate(self) -> float:
        return 1.0 - self.m / self.n

    def target_degrees(self) -> np.ndarray:
        """Per-node degree targets, sorted non-decreasing (class blocks)."""
        counts = round_counts(self.dist, self.n)
        return np.concatenate([
            np.full(counts[d], d, dtype=np.int32) for d in sorted(counts)
        ])


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph with labeled edges; edge order is construction order."""

    n: int
    m: int
    field: FieldSpec
    edge_sym: np.ndarray   # int32 [E] symbol index per edge
    edge_chk: np.ndarray   # int32 [E] constraint index per edge
    edge_label: np.ndarray  # int32 [E] nonzero field element per edge
    target_degrees: np.ndarray = None  # int32 [n], sorted non-decreasing

    def __post_init__(self):
        for name in ("edge_sym", "edge_chk", "edge_label"):
            arr = np.asarray(getattr(self, name), dtype=np.int32)
            object.__setattr__(self, name, arr)
        if self.target_degrees is None:
            object.__setattr__(self, "target_degrees", self.symbol_degrees())
        else:
            object.__setattr__(
                self, "target_degrees",
                np.asarray(self.target_degrees, dtype=np.int32))
        key = self.edge_sym.astype(np.int64) * self.m + self.edge_chk
        if len(np.unique(key)) != len(key):
            raise ValueError("parallel edges are not allowed")
        if self.edge_label.size and (
                self.edge_label.min() < 1
                or self.edge_label.max() >= self.field.q):
            raise ValueError("edge labels must be nonzero field elements")

    @property
    def n_edges(self) -> int:
        return int(self.edge_sym.size)

    def symbol_degrees(self) -> np.ndarray:
        return np.bincount(self.edge_sym, minlength=self.n).astype(np.int32)

    def check_degrees(self) -> np.ndarray:
        return np.bincount(self.edge_chk, minlength=self.m).astype(np.int32)

    def symbol_adjacency(self) -> list:
        """Per-symbol list of (constraint, label) pairs, in edge order."""
        adj = [[] for _ in range(self.n)]
        for j, i, h in zip(self.edge_sym, self.edge_chk, self.edge_label):
            adj[j].append((int(i), int(h)))
        return adj

    def check_adjacency(self) -> list:
        """Per-constraint list of (symbol, label) pairs, in edge order."""
        adj = [[] for _ in range(self.m)]
        for j, i, h in zip(self.edge_sym, self.edge_chk, self.edge_label):
            adj[i].append((int(j), int(h)))
        return adj


@dataclass(frozen=True)
class Schedule:
    """Stage/degree partition profile driving the SPEG edge order.

    ``fractions[di, t]`` is the fraction of all symbol nodes that belongs to
    degree ``degrees[di]`` and stage ``t`` (stages 0-based internally,
    1-based in files).  ``counts`` are the realized integers, apportioned by
    largest remainder within each degree class.  ``ordered`` keeps the node
    index order within each class instead of shuffling it at construction
    time (used by the PEG reduction).
    """

    T: int
    degrees: tuple
    fractions: np.ndarray  # float64 [D, T]
    counts: np.ndarray     # int64   [D, T]
    n: int
    ordered: bool = False

    def fraction(self, d: int, t: int) -> float:
        """f_d^(t) with t given 1-based."""
        return float(self.fractions[self.degrees.index(d), t - 1])

    def count(self, d: int, t: int) -> int:
        return int(self.counts[self.degrees.index(d), t - 1])

    def class_counts(self) -> dict:
        return {d: int(self.counts[i].sum())
                for i, d in enumerate(self.degrees)}


def round_counts(dist: DegreeDistribution, n: int) -> dict:
    """Integer node counts per degree by largest-remainder apportionment.

    Ties go to the larger degree; every count is within 1 of the ideal
    n * Lambda_d and the counts sum to n exactly.
    """
    degrees = list(dist.degrees)
    quotas = np.array([dist.fraction(d) * n for d in degrees])
    base = np.floor(quotas).astype(np.int64)
    remainder = quotas - base
    short = n - int(base.sum())
    if short < 0 or short > len(degrees):
        raise ValueError("degree fractions do not apportion to n nodes")
    # sort by (remainder, degree) descending so ties prefer larger degree
    order = sorted(range(len(degrees)),
                   key=lambda i: (remainder[i], degrees[i]), reverse=True)
    for i in order[:short]:
        base[i] += 1
    return {d: int(c) for d, c in zip(degrees, base)}


def _apportion_within_class(n_d: int, fracs: np.ndarray) -> np.ndarray:
    """Split n_d nodes over stages proportionally to fracs, largest remainder,
    ties toward the larger stage index."""
    total = fracs.sum()
    if total <= 0:
        raise ValueError("degree class has no stage mass")
    quotas = n_d * fracs / total
    base = np.floor(quotas).astype(np.int64)
    remainder = quotas - base
    short = n_d - int(base.sum())
    order = sorted(range(len(fracs)),
                   key=lambda t: (remainder[t], t), reverse=True)
    for t in order[:short]:
        base[t] += 1
    return base


def schedule_from_fractions(fractions: dict, dist: DegreeDistribution,
                            n: int, T: int, ordered: bool = False) -> Schedule:
    """Build a Schedule from {(d, t): f_d^(t)} with t in 1..T.

    The fractions must satisfy the simplex constraints (every f >= 0,
    sum over stages of f_d^(t) = Lambda_d) within 1e-6; integer counts are
    apportioned within each degree class so that they sum to the class size
    exactly.
    """
    degrees = list(dist.degrees)
    f = np.zeros((len(degrees), T), dtype=np.float64)
    for (d, t), val in fractions.items():
        if d not in degrees:
            raise ValueError(f"degree {d} not in the distribution support")
        if not 1 <= t <= T:
            raise ValueError(f"stage {t} outside 1..{T}")
        f[degrees.index(d), t - 1] = val
    if f.min() < -_FRACTION_TOL:
        raise ValueError("negative stage fraction")
    f = np.clip(f, 0.0, None)
    for i, d in enumerate(degrees):
        if abs(f[i].sum() - dist.fraction(d)) > _FRACTION_TOL:
            raise ValueError(
                f"stage fractions for degree {d} sum to {f[i].sum():.8f}, "
                f"expected {dist.fraction(d):.8f}")
    class_counts = round_counts(dist, n)
    counts = np.zeros_like(f, dtype=np.int64)
    for i, d in enumerate(degrees):
        counts[i] = _apportion_within_class(class_counts[d], f[i])
    return Schedule(T=T, degrees=tuple(degrees), fractions=f, counts=counts,
                    n=n, ordered=ordered)


def uniform_split_schedule(dist: DegreeDistribution, n: int, T: int,
                           ordered: bool = False) -> Schedule:
    """Every degree class split evenly over T stages: f_d^(t) = Lambda_d / T."""
    fractions = {(d, t): dist.fraction(d) / T
                 for d in dist.degrees for t in range(1, T + 1)}
    return schedule_from_fractions(fractions, dist, n, T, ordered=ordered)


def singleton_schedule(dist: DegreeDistribution, n: int) -> Schedule:
    """T = n schedule with stage j holding exactly node j, class order kept.

    Running the staged construction with this schedule reproduces the
    node-by-node edge order of the plain progressive-edge-growth loop.
    """
    class_counts = round_counts(dist, n)
    fractions = {}
    start = 0
    for d in sorted(class_counts):
        n_d = class_counts[d]
        lam = dist.fraction(d)
        for i in range(n_d):
            fractions[(d, start + i + 1)] = lam / n_d
        start += n_d
    return schedule_from_fractions(fractions, dist, n, T=n, ordered=True)


def check_degree_targets(m: int, total_edges: int) -> np.ndarray:
    """Advisory near-uniform constraint degrees: floor and ceil of E/m."""
    if total_edges < m:
        raise ValueError("fewer edges than constraint nodes")
    base, extra = divmod(total_edges, m)
    out = np.full(m, base, dtype=np.int64)
    out[m - extra:] += 1
    return out


# ---------------------------------------------------------------------------
# alist file format (MacKay convention), with an "index label" pair extension
# for non-binary labels.
# ---------------------------------------------------------------------------

def write_alist(path, graph: TannerGraph):
    """Write a graph as an alist file.

    Binary graphs (p = 1) use the classic format: per-column then per-row
    1-based index lists, zero-padded to the maximum degree.  For p > 1 every
    index is followed by its label on the same line, and padding becomes
    "0 0" pairs.
    """
    sym_deg = graph.symbol_degrees()
    chk_deg = graph.check_degrees()
    sym_adj = graph.symbol_adjacency()
    chk_adj = graph.check_adjacency()
    labeled = graph.field.p > 1
    lines = [
        f"{graph.n} {graph.m}",
        f"{int(sym_deg.max(initial=0))} {int(chk_deg.max(initial=0))}",
        " ".join(str(int(d)) for d in sym_deg),
        " ".join(str(int(d)) for d in chk_deg),
    ]

    def entry(idx, label):
        return f"{idx + 1} {label}" if labeled else f"{idx + 1}"

    pad = "0 0" if labeled else "0"
    width = int(sym_deg.max(initial=0))
    for j in range(graph.n):
        items = [entry(i, h) for i, h in sym_adj[j]]
        items += [pad] * (width - len(sym_adj[j]))
        lines.append(" ".join(items))
    width = int(chk_deg.max(initial=0))
    for i in range(graph.m):
        items = [entry(j, h) for j, h in chk_adj[i]]
        items += [pad] * (width - len(chk_adj[i]))
        lines.append(" ".join(items))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path, field: FieldSpec = None) -> TannerGraph:
    """Read an alist file back into a TannerGraph.

    ``field`` supplies the alphabet (default GF(2)); labeled files (pairs)
    are auto-detected from the token count of the first column line.
    """
    field = field or FieldSpec(1)
    with open(path) as fh:
        tokens = [line.split() for line in fh if line.strip()]
    n, m = int(tokens[0][0]), int(tokens[0][1])
    max_col, _ = int(tokens[1][0]), int(tokens[1][1])
    col_deg = [int(x) for x in tokens[2]]
    row_deg = [int(x) for x in tokens[3]]
    if len(col_deg) != n or len(row_deg) != m:
        raise ValueError("alist degree lists do not match n, m")
    first_col = tokens[4] if n else []
    labeled = max_col > 0 and len(first_col) == 2 * max_col
    edge_sym, edge_chk, edge_label = [], [], []
    for j in range(n):
        row = tokens[4 + j]
        if labeled:
            pairs = [(int(row[2 * a]), int(row[2 * a + 1]))
                     for a in range(len(row) // 2)]
        else:
            pairs = [(int(x), 1) for x in row]
        pairs = [(idx, lab) for idx, lab in pairs if idx != 0]
        if len(pairs) != col_deg[j]:
            raise ValueError(f"column {j} degree mismatch")
        for idx, lab in pairs:
            edge_sym.append(j)
            edge_chk.append(idx - 1)
            edge_label.append(lab)
    # the per-row section is redundant; validate its degree counts only
    row_section = tokens[4 + n:4 + n + m]
    if len(row_section) != m:
        raise ValueError("alist truncated")
    return TannerGraph(n=n, m=m, field=field,
                       edge_sym=np.array(edge_sym, dtype=np.int32),
                       edge_chk=np.array(edge_chk, dtype=np.int32),
                       edge_label=np.array(edge_label, dtype=np.int32))


# ---------------------------------------------------------------------------
# JSON descriptors
# ---------------------------------------------------------------------------

def dist_to_json(dist: DegreeDistribution, field_p: int = 1) -> dict:
    doc = {
        "field_p": field_p,
        "symbol_nodes": [{"degree": d, "fraction": f}
                         for d, f in dist.symbol_node],
    }
    if dist.has_explicit_constraints():
        doc["constraint_nodes"] = [{"degree": d, "fraction": f}
                                   for d, f in dist.constraint_node]
    else:
        doc["constraint_nodes"] = ALMOST_UNIFORM
    return doc


def dist_from_json(doc: dict):
    """Returns (DegreeDistribution, field_p)."""
    sym = [(e["degree"], e["fraction"]) for e in doc["symbol_nodes"]]
    con = doc.get("constraint_nodes", ALMOST_UNIFORM)
    if con != ALMOST_UNIFORM:
        con = [(e["degree"], e["fraction"]) for e in con]
    return (DegreeDistribution(symbol_node=tuple(sym),
                               constraint_node=con if con == ALMOST_UNIFORM
                               else tuple(con)),
            int(doc.get("field_p", 1)))


def schedule_to_json(schedule: Schedule) -> dict:
    fractions = []
    for i, d in enumerate(schedule.degrees):
        for t in range(schedule.T):
            f = float(schedule.fractions[i, t])
            if f != 0.0:
                fractions.append({"degree": d, "stage": t + 1, "f": f})
    return {"T": schedule.T, "fractions": fractions}


def schedule_from_json(doc: dict, dist: DegreeDistribution, n: int,
                       ordered: bool = False) -> Schedule:
    fractions = {(e["degree"], e["stage"]): e["f"] for e in doc["fractions"]}
    return schedule_from_fractions(fractions, dist, n, int(doc["T"]),
                                   ordered=ordered)


def save_json(path, doc: dict):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
