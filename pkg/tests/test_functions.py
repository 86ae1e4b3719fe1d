import pytest

from orbiteq import (
    InadmissibleWord,
    canonical_point,
    combine,
    compose_shift,
    constant,
    enumerate_points,
    evaluate,
    find_transfer,
    indicator,
    pullback,
    refine,
    tables_equal,
)


def test_indicator_tables(golden, full2):
    assert indicator(golden, (1, 2)).table == {(1, 1): 0, (1, 2): 1, (2, 1): 0}
    assert indicator(full2, (1,)).table == {(1,): 1, (2,): 0}


def test_indicator_rejects_bad_word(golden):
    with pytest.raises(InadmissibleWord):
        indicator(golden, (2, 2))


def test_evaluate_first_symbols_decide(full2):
    f = indicator(full2, (1, 2))
    assert evaluate(f, canonical_point(full2, (), (1, 2))) == 1
    assert evaluate(f, canonical_point(full2, (), (2, 1))) == 0
    assert evaluate(f, canonical_point(full2, (2,), (1,))) == 0


def test_evaluate_depth3_on_fixed_point(full2):
    f = indicator(full2, (2, 2, 2))
    assert evaluate(f, canonical_point(full2, (), (2,))) == 1
    assert evaluate(f, canonical_point(full2, (), (1,))) == 0


def test_constant_evaluates_everywhere(golden):
    one = constant(golden, 1)
    for p in enumerate_points(golden, 2, 3):
        assert evaluate(one, p) == 1


def test_combine_cancellation(full2):
    f = indicator(full2, (1, 2))
    assert combine(1, f, -1, f).is_constant(0)


def test_partition_of_unity(golden):
    for m in (1, 2, 3):
        total = constant(golden, 0)
        for w in golden.words(m):
            total = combine(1, total, 1, indicator(golden, w))
        assert total.is_constant(1)
        assert total.depth == m


def test_combine_example_value(full2):
    f = combine(2, indicator(full2, (1,)), 3, indicator(full2, (1, 2)))
    assert evaluate(f, canonical_point(full2, (), (1, 2))) == 5


def test_linearity_pointwise(golden):
    f = indicator(golden, (1, 2))
    g = indicator(golden, (1,))
    for c1, c2 in ((1, 1), (2, -3), (0, 5)):
        h = combine(c1, f, c2, g)
        for p in enumerate_points(golden, 2, 3):
            assert evaluate(h, p) == c1 * evaluate(f, p) + c2 * evaluate(g, p)


def test_refinement_soundness(golden):
    f = indicator(golden, (2, 1))
    for extra in (1, 2, 3):
        r = refine(f, f.depth + extra)
        assert tables_equal(r, f)
        for p in enumerate_points(golden, 2, 3):
            assert evaluate(r, p) == evaluate(f, p)


def test_pullback_of_constant(full2, swap2):
    c = constant(full2, 7)
    assert tables_equal(pullback(c, swap2), c)


def test_pullback_identity_and_swap(full2, swap2):
    from orbiteq import identity_code

    f = indicator(full2, (1, 2))
    assert tables_equal(pullback(f, identity_code(full2)), f)
    g = pullback(indicator(full2, (1,)), swap2)
    assert tables_equal(g, indicator(full2, (2,)))


def test_pullback_two_block(full2):
    from orbiteq import compile_block_code

    # window-2 code reading only its first symbol, output swapped
    code = compile_block_code(
        full2, full2, 2, {w: 3 - w[0] for w in full2.words(2)}
    )
    g = pullback(indicator(full2, (1,)), code)
    assert tables_equal(g, indicator(full2, (2,)))


def test_find_transfer_zero(full2):
    b = find_transfer(full2, constant(full2, 1), 1, 4)
    assert b is not None and b.is_constant(0)


def test_find_transfer_recovers_coboundary(full2):
    ind = indicator(full2, (1,))
    g = combine(1, constant(full2, 1), 1, combine(1, ind, -1, compose_shift(ind)))
    b = find_transfer(full2, g, 1, 4)
    assert b is not None
    assert combine(1, b, -1, ind).is_constant()
    # the certificate re-verifies
    lhs = combine(1, constant(full2, 1), 1, combine(1, b, -1, compose_shift(b)))
    assert tables_equal(lhs, g)


def test_find_transfer_cycle_sum_obstruction(full2):
    # along any n-cycle the sums force n*c = sum of g, so g=2, c=1 fails
    assert find_transfer(full2, constant(full2, 2), 1, 6) is None


def test_find_transfer_deeper_coboundary(golden):
    ind = indicator(golden, (1, 2))
    g = combine(1, constant(golden, 1), 1, combine(1, ind, -1, compose_shift(ind)))
    b = find_transfer(golden, g, 1, 5)
    assert b is not None
    lhs = combine(1, constant(golden, 1), 1, combine(1, b, -1, compose_shift(b)))
    assert tables_equal(lhs, g)


def test_transfer_certificate_cycle_sums(full2):
    # whenever a transfer exists, Birkhoff sums along every short cycle
    # must equal the cycle length times the constant
    ind = indicator(full2, (1,))
    g = combine(1, constant(full2, 1), 1, combine(1, ind, -1, compose_shift(ind)))
    b = find_transfer(full2, g, 1, 4)
    assert b is not None
    from orbiteq import shift_point

    for p in enumerate_points(full2, 0, 8):
        n = len(p.cycle)
        if n > 8:
            continue
        total = 0
        q = p
        for _ in range(n):
            total += evaluate(g, q)
            q = shift_point(full2, q)
        assert total == n * 1
