import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import momentgibbs as mg
from oracles import classify_against_hull


def test_interval_hull(three_state):
    Q = mg.convex_hull(three_state)
    assert Q.vertices == (0, 2)
    assert Q.affine_dim == 1
    assert Q.span_equations == ()
    facets = {(tuple(f.normal), f.offset) for f in Q.facets}
    assert facets == {((1.0,), 0.0), ((-1.0,), -2.0)}
    assert Q.diameter == 2.0


def test_square_hull(square):
    Q = mg.convex_hull(square)
    assert Q.vertices == (0, 1, 2, 3)
    assert len(Q.facets) == 4
    # unit square is cut out by x >= 0, y >= 0, -x >= -1, -y >= -1
    facets = {(tuple(f.normal), f.offset) for f in Q.facets}
    assert facets == {
        ((1.0, 0.0), 0.0),
        ((0.0, 1.0), 0.0),
        ((-1.0, 0.0), -1.0),
        ((0.0, -1.0), -1.0),
    }


def test_collinear_hull(collinear):
    Q = mg.convex_hull(collinear)
    assert Q.vertices == (0, 2)
    assert Q.affine_dim == 1
    assert len(Q.span_equations) == 1
    normal, offset = Q.span_equations[0]
    # the span is the line x = y
    assert abs(abs(normal[0]) - 1 / math.sqrt(2)) < 1e-12
    assert normal[0] == pytest.approx(-normal[1], abs=1e-12)
    assert offset == pytest.approx(0.0, abs=1e-12)
    for pt in collinear.points:
        assert float(normal @ pt) == pytest.approx(offset, abs=1e-12)


def test_interior_margin_square(square):
    Q = mg.convex_hull(square)
    assert mg.interior_margin(Q, [0.5, 0.5]) == pytest.approx(0.5)
    assert mg.interior_margin(Q, [1.0, 1.0]) == pytest.approx(0.0, abs=1e-15)
    assert mg.interior_margin(Q, [2.0, 2.0]) == pytest.approx(-1.0)
    with pytest.raises(mg.DimensionMismatch):
        mg.interior_margin(Q, [0.5])


def test_interior_margin_relative_to_span(collinear):
    Q = mg.convex_hull(collinear)
    assert mg.interior_margin(Q, [1.0, 1.0]) == pytest.approx(math.sqrt(2))
    with pytest.raises(mg.OffAffineSpan):
        mg.interior_margin(Q, [1.0, 1.2])


def test_single_point_hull():
    A = mg.new_state_set(2, [[3.0, 4.0]])
    Q = mg.convex_hull(A)
    assert Q.vertices == (0,)
    assert Q.facets == ()
    assert len(Q.span_equations) == 2
    assert mg.interior_margin(Q, [3.0, 4.0]) == math.inf
    with pytest.raises(mg.OffAffineSpan):
        mg.interior_margin(Q, [3.0, 4.1])


def test_facet_invariants_random_sets():
    rng = np.random.Generator(np.random.Philox(key=31))
    for _ in range(20):
        n = int(rng.integers(1, 5))
        N = int(rng.integers(n + 1, 13))
        A = mg.new_state_set(n, rng.normal(size=(N, n)))
        Q = mg.convex_hull(A)
        for f in Q.facets:
            values = A.points @ f.normal - f.offset
            assert values.min() >= -1e-9  # every point satisfies the halfspace
            norm = np.linalg.norm(f.normal)
            tight = np.sum(np.abs(values) <= 1e-7 * norm)
            assert tight >= Q.affine_dim  # facets are genuine faces
        for v in Q.vertices:
            assert 0 <= v < N


def test_hull_determinism():
    rng = np.random.Generator(np.random.Philox(key=32))
    A = mg.new_state_set(3, rng.normal(size=(12, 3)))
    Q1 = mg.convex_hull(A)
    Q2 = mg.convex_hull(A)
    assert Q1.vertices == Q2.vertices
    assert len(Q1.facets) == len(Q2.facets)
    for f1, f2 in zip(Q1.facets, Q2.facets):
        assert np.array_equal(f1.normal, f2.normal) and f1.offset == f2.offset


def test_cube_facets_merged():
    cube = mg.new_state_set(3, [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    Q = mg.convex_hull(cube)
    assert len(Q.vertices) == 8
    assert len(Q.facets) == 6
    hyper = mg.new_state_set(
        4, [[a, b, c, d] for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)]
    )
    Q4 = mg.convex_hull(hyper)
    assert len(Q4.vertices) == 16
    assert len(Q4.facets) == 8


def test_unsupported_dimension():
    pts = np.vstack([np.zeros(7), np.eye(7)])
    A = mg.new_state_set(7, pts)
    assert A.affine_dim == 7
    with pytest.raises(mg.UnsupportedDimension):
        mg.convex_hull(A)


def test_margin_matches_lp_classification():
    rng = np.random.Generator(np.random.Philox(key=33))
    checked = 0
    while checked < 15:
        n = int(rng.integers(1, 4))
        N = int(rng.integers(n + 1, 11))
        pts = rng.uniform(-1, 1, size=(N, n))
        A = mg.new_state_set(n, pts)
        if A.affine_dim != n:
            continue
        Q = mg.convex_hull(A)
        probes = []
        # clearly interior: fat convex combinations of all points
        w = rng.uniform(0.2, 1.0, size=N)
        probes.append(((w / w.sum()) @ pts, "interior"))
        # vertices sit on the boundary
        probes.append((pts[Q.vertices[0]], "boundary"))
        # push well past the hull
        center = pts.mean(axis=0)
        far = center + 10.0 * (pts[Q.vertices[-1]] - center + 1.0)
        probes.append((far, "exterior"))
        for x, expected in probes:
            lp_class = classify_against_hull(pts, x, tol=1e-7)
            margin = mg.interior_margin(Q, x)
            if margin > 1e-7:
                mine = "interior"
            elif margin >= -1e-7:
                mine = "boundary"
            else:
                mine = "exterior"
            assert mine == lp_class == expected
        checked += 1


def test_min_face_square(square):
    face = mg.min_face(square, [1.0, 1.0])
    assert face.indices == (0,)
    assert face.value == 0.0
    assert np.array_equal(face.barycenter, [0.0, 0.0])

    tie = mg.min_face(square, [1.0, 0.0])
    assert tie.indices == (0, 2)
    assert tie.barycenter == pytest.approx([0.0, 0.5])

    everything = mg.min_face(square, [0.0, 0.0])
    assert everything.indices == (0, 1, 2, 3)
    assert everything.barycenter == pytest.approx([0.5, 0.5])


@settings(deadline=None, max_examples=40)
@given(st.floats(min_value=1e-3, max_value=1e3, allow_nan=False))
def test_min_face_scale_invariant(scale):
    A = mg.new_state_set(2, [[0, 0], [1, 0], [0, 1], [1, 1]])
    base = mg.min_face(A, [1.0, 0.5]).indices
    assert mg.min_face(A, [scale, 0.5 * scale]).indices == base


def test_tropical_limit_values(two_state, square):
    assert mg.tropical_limit(two_state, [1.0]) == pytest.approx([0.0])
    assert mg.tropical_limit(two_state, [-1.0]) == pytest.approx([1.0])
    assert mg.tropical_limit(square, [1.0, 0.0]) == pytest.approx([0.0, 0.5])
    with pytest.raises(mg.ZeroDirection):
        mg.tropical_limit(square, [0.0, 0.0])


def test_tropical_convergence_rate():
    rng = np.random.Generator(np.random.Philox(key=34))
    done = 0
    while done < 10:
        n = int(rng.integers(1, 4))
        N = int(rng.integers(2, 9))
        pts = rng.integers(-4, 5, size=(N, n)).astype(float)
        try:
            A = mg.new_state_set(n, pts)
        except mg.DuplicatePoint:
            continue
        direction = rng.integers(-3, 4, size=n).astype(float)
        if not direction.any():
            continue
        pairings = np.sort(pts @ direction)
        gap = pairings[1] - pairings[0]
        if gap < 0.5:  # want a unique minimizer
            continue
        limit = mg.tropical_limit(A, direction)
        diam = mg.convex_hull(A).diameter
        errs = []
        for t in (10.0, 20.0, 50.0):
            err = np.linalg.norm(mg.mean_energy(A, t * direction) - limit)
            assert err <= (N - 1) * diam * math.exp(-t * gap) + 1e-15
            errs.append(err)
        assert errs[0] >= errs[1] >= errs[2]
        final = np.linalg.norm(mg.mean_energy(A, (50.0 / gap) * direction) - limit)
        assert final <= 1e-6
        done += 1


def test_mean_energy_always_strictly_interior():
    rng = np.random.Generator(np.random.Philox(key=35))
    for _ in range(15):
        n = int(rng.integers(1, 4))
        N = int(rng.integers(n + 1, 9))
        A = mg.new_state_set(n, rng.uniform(-1, 1, size=(N, n)))
        if A.affine_dim != n:
            continue
        Q = mg.convex_hull(A)
        for scale in (0.0, 1.0, 5.0):
            beta = scale * rng.normal(size=n)
            assert mg.interior_margin(Q, mg.mean_energy(A, beta)) > 0.0
