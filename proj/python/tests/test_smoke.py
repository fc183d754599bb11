import json

import pytest

import pg3q


@pytest.fixture(scope="module")
def ctx():
    return pg3q.FieldContext(9)


def test_field_basics(ctx):
    assert ctx.q == 9
    assert ctx.m == 2
    # characteristic three
    assert ctx.add(ctx.add(1, 1), 1) == 0
    assert ctx.mul(ctx.gamma, ctx.inv(ctx.gamma)) == 1
    assert not ctx.is_square(ctx.epsilon)
    with pytest.raises(Exception):
        ctx.inv(0)


def test_q3_refused():
    with pytest.raises(Exception):
        pg3q.FieldContext(3)


def test_form_invariants(ctx):
    for r in range(1, 9):
        e = pg3q.rep_E(ctx, r)
        assert pg3q.j_invariant(ctx, e) == r
        assert pg3q.discriminant(ctx, e) == ctx.inv(r)
        ft = pg3q.factorization_type(ctx, e)
        assert ft == {1: "F1", 2: "F2", 4: "F4"}[pg3q.classify_j(ctx, r)]
    # the action preserves the invariant
    f = pg3q.rep_E(ctx, 2)
    g = [1, 1, 0, 1]
    assert pg3q.canonical_invariant(ctx, pg3q.act_on_form(ctx, g, f)) == pg3q.canonical_invariant(ctx, f)


def test_elliptic(ctx):
    for r in range(1, 9):
        n = pg3q.count_points(ctx, r)
        assert n % 3 == 0
        assert (n - 10) ** 2 <= 36
    # zeta relation on one representative
    e = pg3q.rep_E(ctx, 2)
    mu = {"F1": 1, "F2": 2, "F4": 4}[pg3q.factorization_type(ctx, e)]
    assert 2 * pg3q.zeta(ctx, e) == pg3q.count_points(ctx, 2) - mu


def test_incidence_tallies(ctx):
    # real chord: 2 curve points, q-1 real-chord points
    assert pg3q.point_tally(ctx, [0, 0, 1, 0, 0, 0]) == [2, 0, 0, 8, 0]
    # tangent line pencil: one osculating plane, q planes meeting doubly
    assert pg3q.plane_tally(ctx, [1, 0, 0, 0, 0, 0]) == [1, 9, 0, 0, 0]


def test_census_and_verification(ctx):
    census = pg3q.form_census(ctx)
    assert census["orbit_count"] == 20
    assert sum(o["size"] for o in census["orbits"]) == 6480
    for orbit in census["orbits"]:
        assert orbit["size"] * orbit["stabilizer_order"] == census["group_order"]
    results = pg3q.verify_forms(ctx)
    assert all(r["pass"] for r in results)


def test_emit_tables(ctx, tmp_path):
    files = pg3q.emit_tables(ctx, "json", str(tmp_path / "a"))
    assert len(files) == 1
    report = json.loads(open(files[0]).read())
    assert report["q"] == 9
    assert len(report["representatives"]) == 20
    # byte stability
    files2 = pg3q.emit_tables(ctx, "json", str(tmp_path / "b"))
    assert open(files[0], "rb").read() == open(files2[0], "rb").read()
    with pytest.raises(Exception):
        pg3q.emit_tables(ctx, "yaml", str(tmp_path / "c"))
