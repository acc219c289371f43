"""Fat flat subschemes and the builders for every named configuration.

A scheme is a list of (linear subspace, multiplicity) components, none of
which contains another.  The k-th symbolic power of its ideal is operated
on exclusively through the component-wise orders k*mu_i, which is exact
for linear supports (each component is a complete intersection, so the
powers of its ideal are unmixed).
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GenericityError, ValidationError
from .projective import (
    LinForm,
    Subspace,
    collinear,
    hyperplane_subspace,
    hyperplanes_general,
    intersect_hyperplanes,
    line_through,
    normalize_point,
    point_subspace,
    random_general_hyperplanes,
    random_point_on,
    subspace_contains,
    transform_subspace,
)

_MAX_RETRIES = 64


@dataclass(frozen=True)
class FatComponent:
    subspace: Subspace
    multiplicity: int
    label: str = ""

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValidationError("multiplicity must be >= 1")


@dataclass(frozen=True)
class FatFlatScheme:
    """Components with multiplicities; pairwise distinct, containment-free.

    ``star_core`` records (e, s, m) when the scheme arises from the star
    construction W' + m*S_N(e, s), enabling the closed-form Waldschmidt
    value m*s/e downstream.
    """

    ambient_dim: int
    components: tuple
    star_core: tuple = None
    predicted_alpha_multiple: int = None

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValidationError("scheme needs at least one component")
        for comp in comps:
            if comp.subspace.ambient_dim != self.ambient_dim:
                raise ValidationError("component ambient dimension mismatch")
        for a, b in itertools.combinations(comps, 2):
            if a.subspace == b.subspace:
                raise ValidationError("components must be pairwise distinct")
            if subspace_contains(a.subspace, b.subspace) or \
               subspace_contains(b.subspace, a.subspace):
                raise ValidationError(
                    "no component may contain another "
                    f"({a.label or a.subspace} vs {b.label or b.subspace})")
        object.__setattr__(self, "components", comps)

    @property
    def max_multiplicity(self) -> int:
        return max(c.multiplicity for c in self.components)


@dataclass(frozen=True)
class FatPointsP2:
    """Fat points in P^2: distinct points with positive multiplicities."""

    points: tuple
    multiplicities: tuple

    def __init__(self, points, multiplicities):
        pts = tuple(normalize_point(p) for p in points)
        mults = tuple(int(m) for m in multiplicities)
        if len(pts) != len(mults) or not pts:
            raise ValidationError("need equally many points and multiplicities")
        if len(set(pts)) != len(pts):
            raise ValidationError("points must be pairwise distinct")
        if any(m < 1 for m in mults):
            raise ValidationError("multiplicities must be >= 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "multiplicities", mults)

    def __len__(self):
        return len(self.points)

    def to_scheme(self) -> FatFlatScheme:
        comps = tuple(
            FatComponent(point_subspace(p), m, label=f"p{i+1}")
            for i, (p, m) in enumerate(zip(self.points, self.multiplicities)))
        return FatFlatScheme(2, comps)


@dataclass(frozen=True)
class StarData:
    """Bookkeeping of a star configuration: which e-subset cut each piece."""

    ambient_dim: int
    e: int
    s: int
    hyperplanes: tuple
    subsets: tuple  # subsets[i] is the index tuple that produced component i


def star_configuration(N, e, s, hyperplanes=None, seed=0):
    """S_N(e, s): all e-wise intersections of s general hyperplanes."""
    if not (1 <= e <= N and e <= s):
        raise ValidationError("need 1 <= e <= N and e <= s")
    if hyperplanes is None:
        hyperplanes = random_general_hyperplanes(N, s, seed)
    hyperplanes = tuple(hyperplanes)
    if len(hyperplanes) != s or not hyperplanes_general(hyperplanes):
        raise GenericityError("hyperplanes fail the genericity check")
    subsets = tuple(itertools.combinations(range(s), e))
    comps = []
    for subset in subsets:
        sub = intersect_hyperplanes(hyperplanes, subset)
        label = "L" + "".join(str(j + 1) for j in subset)
        comps.append(FatComponent(sub, 1, label=label))
    if len({c.subspace for c in comps}) != len(comps):
        raise GenericityError("e-fold intersections are not distinct")
    star = StarData(N, e, s, hyperplanes, subsets)
    scheme = FatFlatScheme(N, tuple(comps), star_core=(e, s, 1))
    return star, scheme


def scale_multiplicities(scheme: FatFlatScheme, m: int) -> FatFlatScheme:
    if m < 1:
        raise ValidationError("scale factor must be >= 1")
    comps = tuple(FatComponent(c.subspace, c.multiplicity * m, c.label)
                  for c in scheme.components)
    core = scheme.star_core
    if core is not None:
        core = (core[0], core[1], core[2] * m)
    return FatFlatScheme(scheme.ambient_dim, comps, star_core=core,
                         predicted_alpha_multiple=scheme.predicted_alpha_multiple)


def build_fat_flat(star: StarData, m: int, extras=()):
    """W_m = W' + m*S_N(e, s) with validated extra components.

    Each extra (subspace, multiplicity) must have codimension in [2, N],
    lie inside one of the constructing hyperplanes, respect the cap
    mu <= floor(m / e), and be containment-free against everything else.
    Extras with multiplicity 0 are dropped.
    """
    if m < 1:
        raise ValidationError("m must be >= 1")
    N, e, s = star.ambient_dim, star.e, star.s
    cap = m // e
    comps = []
    for subset in star.subsets:
        sub = intersect_hyperplanes(star.hyperplanes, subset)
        label = "L" + "".join(str(j + 1) for j in subset)
        comps.append(FatComponent(sub, m, label=label))
    hyps = [hyperplane_subspace(h) for h in star.hyperplanes]
    kept = []
    for idx, (sub, mu) in enumerate(extras):
        if mu == 0:
            continue
        if not (0 <= mu <= cap):
            raise ValidationError(
                f"extra multiplicity {mu} exceeds cap floor({m}/{e}) = {cap}")
        if not (2 <= sub.codim <= N):
            raise ValidationError("extras must have codimension in [2, N]")
        if not any(subspace_contains(h, sub) for h in hyps):
            raise ValidationError(
                "extra subspace is not contained in the hyperplane union")
        kept.append(FatComponent(sub, mu, label=f"M{idx+1}"))
    scheme = FatFlatScheme(N, tuple(comps) + tuple(kept), star_core=(e, s, m))
    return scheme


def build_theorem_a(N, d, s, t, e, extras=(), hyperplanes=None, seed=0):
    """A scheme with alpha(I^(k)) = d*k for every k, via d = s*t, m = e*t.

    Extras obey the tighter cap mu <= t used in the construction's proof.
    """
    if d != s * t:
        raise ValidationError("need d = s * t")
    if not (1 <= e <= N and e <= s):
        raise ValidationError("need 1 <= e <= N and e <= s")
    if any(mu > t for _, mu in extras):
        raise ValidationError("extra multiplicities must be <= t")
    m = e * t
    if hyperplanes is None:
        hyperplanes = random_general_hyperplanes(N, s, seed)
    star, _ = star_configuration(N, e, s, hyperplanes=hyperplanes)
    scheme = build_fat_flat(star, m, extras)
    return FatFlatScheme(N, scheme.components, star_core=scheme.star_core,
                         predicted_alpha_multiple=d)


def build_quasi_star(s, seed=0):
    """W_2 = sum q_i + 2*S_2(2, s): doubled star points of s general lines
    plus one simple point on each line, the extras not all collinear."""
    if s < 2:
        raise ValidationError("need s >= 2")
    rng = random.Random(seed)
    for _ in range(_MAX_RETRIES):
        lines = random_general_hyperplanes(2, s, rng.randrange(1 << 30))
        star, _ = star_configuration(2, 2, s, hyperplanes=lines)
        star_points = [intersect_hyperplanes(lines, sub) for sub in star.subsets]
        line_subs = [hyperplane_subspace(h) for h in lines]
        qs = []
        try:
            for i in range(s):
                avoid = star_points + [ls for j, ls in enumerate(line_subs)
                                       if j != i] + \
                        [point_subspace(q) for q in qs]
                qs.append(random_point_on(line_subs[i], rng, avoid=avoid))
        except GenericityError:
            continue
        if s >= 3 and collinear(qs):
            continue
        comps = [FatComponent(sp, 2, label=f"L{''.join(str(j+1) for j in sub)}")
                 for sp, sub in zip(star_points, star.subsets)]
        comps += [FatComponent(point_subspace(q), 1, label=f"q{i+1}")
                  for i, q in enumerate(qs)]
        return FatFlatScheme(2, tuple(comps), star_core=(2, s, 2),
                             predicted_alpha_multiple=s)
    raise GenericityError("quasi-star generation failed")


def build_rational_target(a, b, N=None, seed=0):
    """A scheme whose Waldschmidt constant is exactly b/a.

    Prefers W_m = m*S_N(a, s) for the smallest factorization b = s*m with
    m >= 2 and s >= a; falls back to the plain star S_N(a, b).
    """
    if not (1 <= a < b):
        raise ValidationError("need 1 <= a < b")
    if N is None:
        N = max(a, 2)
    if N < a:
        raise ValidationError("ambient dimension must be at least a")
    best = None
    for m in range(2, b + 1):
        if b % m == 0 and b // m >= a:
            s = b // m
            if best is None or s < best[0]:
                best = (s, m)
    if best is not None:
        s, m = best
        star, _ = star_configuration(N, a, s, seed=seed)
        return build_fat_flat(star, m, extras=())
    _, scheme = star_configuration(N, a, b, seed=seed)
    return scheme


def symbolic_multiplicities(scheme: FatFlatScheme, k: int):
    """Component orders of the k-th symbolic power: (subspace, k*mu_i)."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return [(c.subspace, k * c.multiplicity) for c in scheme.components]


def transform_scheme(scheme: FatFlatScheme, matrix) -> FatFlatScheme:
    """Apply one invertible coordinate change to every component."""
    comps = tuple(FatComponent(transform_subspace(c.subspace, matrix),
                               c.multiplicity, c.label)
                  for c in scheme.components)
    return FatFlatScheme(scheme.ambient_dim, comps,
                         star_core=scheme.star_core,
                         predicted_alpha_multiple=scheme.predicted_alpha_multiple)


# -- the planar families of the classification --------------------------------

def _pt(x, y, z=1):
    return normalize_point((Fraction(x), Fraction(y), Fraction(z)))


def build_theorem_b_family(case_id, params=None, seed=0):
    """Exact-coordinate instances of the planar families.

    Cases: 'a' (r doubles + s simples on a line), 'b' (two lines crossing
    at the unique double), 'c' (one double off a line of three simples),
    'wprime', 'zprime', 'z' (n points, Figure-3 shape), 'wsecond',
    'vprime' (multiplicities on a line).
    """
    params = dict(params or {})
    if case_id == "a":
        r = int(params.get("r", 1))
        s = int(params.get("s", 0))
        if r < 1 or s < 0:
            raise ValidationError("case a needs r >= 1, s >= 0")
        pts = [_pt(i + 1, 0) for i in range(r + s)]
        mults = [2] * r + [1] * s
        return FatPointsP2(pts, mults)
    if case_id == "b":
        r = int(params.get("r", 1))
        s = int(params.get("s", 1))
        if r < 1 or s < 1:
            raise ValidationError("case b needs r, s >= 1")
        pts = [_pt(i + 1, 0) for i in range(r)] + \
              [_pt(0, i + 1) for i in range(s)] + [_pt(0, 0)]
        mults = [1] * (r + s) + [2]
        return FatPointsP2(pts, mults)
    if case_id == "c":
        pts = [_pt(0, 1), _pt(1, 0), _pt(2, 0), _pt(3, 0)]
        return FatPointsP2(pts, [2, 1, 1, 1])
    if case_id == "wprime":
        pts = [_pt(0, 1), _pt(0, 2), _pt(1, 0), _pt(2, 0)]
        return FatPointsP2(pts, [2, 1, 1, 1])
    if case_id == "zprime":
        pts = [_pt(0, 1), _pt(1, 0), _pt(2, 0)]
        return FatPointsP2(pts, [2, 2, 1])
    if case_id == "z":
        n = int(params.get("n", 5))
        if n < 4:
            raise ValidationError("the Figure-3 family needs n >= 4")
        pts = [_pt(0, 1)] + [_pt(i + 1, 0) for i in range(n - 1)]
        return FatPointsP2(pts, [2] + [1] * (n - 1))
    if case_id == "wsecond":
        pts = [_pt(0, 1), _pt(0, 2), _pt(1, 0), _pt(2, 0), _pt(0, 0)]
        return FatPointsP2(pts, [2, 1, 1, 1, 1])
    if case_id == "vprime":
        mults = [int(m) for m in params.get("multiplicities", (2, 1))]
        if not mults or any(m not in (1, 2) for m in mults):
            raise ValidationError("V' multiplicities must be 1 or 2")
        if 2 not in mults:
            raise ValidationError("V' must be non-reduced")
        pts = [_pt(i + 1, 0) for i in range(len(mults))]
        return FatPointsP2(pts, mults)
    raise ValidationError(f"unknown family {case_id!r}")


def support_line(fp: FatPointsP2) -> LinForm:
    """The line carrying a collinear configuration."""
    if not collinear(fp.points):
        raise ValidationError("configuration is not collinear")
    return line_through(fp.points[0], fp.points[1])
