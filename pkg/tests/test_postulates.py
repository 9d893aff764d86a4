import pytest

from fragmerge import (
    AND2,
    HORN,
    KROM,
    Aggregator,
    ClosureRefinement,
    CountingDistance,
    Instance,
    LexClosureRefinement,
    LexRefinement,
    MergeOperator,
    ModelSet,
    PostulateId,
    RefinedOperator,
    SearchSpace,
    ShapeMismatchError,
    SpaceTooLargeError,
    Universe,
    UnknownFixtureError,
    check_postulate,
    fixture_ids,
    reproduce,
    search,
)
from helpers import U2, EchoConstraintOperator, ms, prof

SIG2 = MergeOperator(CountingDistance.hamming(2), Aggregator.SIGMA)
GMAX2 = MergeOperator(CountingDistance.hamming(2), Aggregator.GMAX)
CLO_SIG = RefinedOperator(SIG2, ClosureRefinement(AND2))
CLO_GMAX = RefinedOperator(GMAX2, ClosureRefinement(AND2))


def simple(e, mu):
    return Instance((e,), (mu,))


class TestCheckPostulate:
    def test_ic0_ic1_ic2_pass_for_merge(self):
        e, mu = prof(U2, ("a", "ab"), ("b", "ab")), ms(U2, "", "a", "b")
        for pid in (PostulateId.IC0, PostulateId.IC1, PostulateId.IC2):
            assert check_postulate(pid, SIG2, simple(e, mu)) is None

    def test_ic2_pass_for_refined_on_agreeing_profile(self):
        e = prof(U2, ("a", "ab"), ("ab",))
        mu = ModelSet.full(U2)
        assert check_postulate(PostulateId.IC2, CLO_SIG, simple(e, mu)) is None

    def test_ic2_witness_for_echo(self):
        # echo returns all of mu although profile and constraint agree on less
        e = prof(U2, ("ab",))
        mu = ModelSet.full(U2)
        hit = check_postulate(PostulateId.IC2, EchoConstraintOperator(), simple(e, mu))
        assert hit is not None
        assert hit.postulate is PostulateId.IC2
        assert dict(hit.details)["profile-and-constraint"] == "{a,b}"

    def test_ic3_pass_on_permuted_presentation(self):
        e1 = prof(U2, ("a",), ("b", "ab"))
        e2 = prof(U2, ("b", "ab"), ("a",))
        mu = ms(U2, "", "a", "b")
        instance = Instance((e1, e2), (mu, mu))
        assert check_postulate(PostulateId.IC3, SIG2, instance) is None

    def test_ic3_shape_mismatch_on_inequivalent_profiles(self):
        instance = Instance((prof(U2, ("a",)), prof(U2, ("b",))), (ms(U2, "a"), ms(U2, "a")))
        with pytest.raises(ShapeMismatchError):
            check_postulate(PostulateId.IC3, SIG2, instance)

    def test_ic4_witness_for_closure_of_gmax(self):
        e = prof(U2, ("",), ("ab",))
        mu = ModelSet.full(U2)
        hit = check_postulate(PostulateId.IC4, CLO_GMAX, simple(e, mu))
        assert hit is not None
        assert dict(hit.details)["output"] == "{}|{a}|{b}"
        assert hit.recheck(CLO_GMAX)

    def test_ic4_passes_for_closure_of_sigma_same_instance(self):
        e = prof(U2, ("",), ("ab",))
        mu = ModelSet.full(U2)
        assert check_postulate(PostulateId.IC4, CLO_SIG, simple(e, mu)) is None

    def test_ic4_shape_checks(self):
        mu = ms(U2, "", "a")
        with pytest.raises(ShapeMismatchError):
            check_postulate(PostulateId.IC4, SIG2, simple(prof(U2, ("a",)), mu))
        with pytest.raises(ShapeMismatchError):
            # second base does not entail the constraint
            check_postulate(PostulateId.IC4, SIG2, simple(prof(U2, ("a",), ("b",)), mu))

    def test_ic5_witness_three_against_one(self):
        u = Universe("abc")
        e1 = prof(u, ("a", "ab", "ac"), ("b", "ab", "bc"), ("c", "ac", "bc"))
        e2 = prof(u, ("", "b"))
        mu = ModelSet.from_sets(u, "", "a", "b", "c")
        op = RefinedOperator(
            MergeOperator(CountingDistance.hamming(3), Aggregator.SIGMA),
            ClosureRefinement(AND2),
        )
        hit = check_postulate(PostulateId.IC5, op, Instance((e1, e2), (mu,)))
        assert hit is not None
        assert dict(hit.details)["joint"] == "{}|{b}"
        assert dict(hit.details)["union-output"] == "{b}"

    def test_ic7_witness_for_closure(self):
        e = prof(U2, ("a",), ("b",), ("ab",))
        mu1, mu2 = ms(U2, "", "a", "b"), ms(U2, "", "a")
        hit = check_postulate(PostulateId.IC7, CLO_SIG, Instance((e,), (mu1, mu2)))
        assert hit is not None
        assert dict(hit.details)["restricted"] == "{}|{a}"
        assert dict(hit.details)["conjoined"] == "{a}"

    def test_ic7_passes_for_lex(self):
        e = prof(U2, ("a",), ("b",), ("ab",))
        mu1, mu2 = ms(U2, "", "a", "b"), ms(U2, "", "a")
        lex = RefinedOperator(SIG2, LexRefinement(AND2))
        assert check_postulate(PostulateId.IC7, lex, Instance((e,), (mu1, mu2))) is None

    def test_ic6_witnesses_for_all_three_refinements(self):
        k1, k2, k3 = ("a", "ab"), ("b", "ab"), ("", "a", "b")
        e1 = prof(U2, k1, k2, k3)
        mu = ModelSet.full(U2)
        cases = [
            (ClosureRefinement(AND2), prof(U2, ("",))),
            (LexRefinement(AND2), prof(U2, k1)),
            (LexClosureRefinement(AND2), prof(U2, ("",))),
        ]
        for kind, e2 in cases:
            op = RefinedOperator(GMAX2, kind)
            hit = check_postulate(PostulateId.IC6, op, Instance((e1, e2), (mu,)))
            assert hit is not None, kind
            assert hit.recheck(op)

    def test_ic8_witness_for_closure_of_gmax(self):
        # verified by hand: merge under the full constraint is {{a},{b}},
        # closing adds {}; conjoining with {{},{a,b}} keeps both models
        e = prof(U2, ("",), ("ab",))
        mu1 = ModelSet.full(U2)
        mu2 = ms(U2, "", "ab")
        hit = check_postulate(PostulateId.IC8, CLO_GMAX, Instance((e,), (mu1, mu2)))
        assert hit is not None
        assert dict(hit.details)["restricted"] == "{}"
        assert dict(hit.details)["conjoined"] == "{}|{a,b}"

    def test_shape_count_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            check_postulate(PostulateId.IC0, SIG2, Instance((), (ms(U2, "a"),)))
        with pytest.raises(ShapeMismatchError):
            check_postulate(PostulateId.IC5, SIG2, simple(prof(U2, ("a",)), ms(U2, "a")))


class TestSearch:
    def test_basic_postulates_hold_for_closure_refinement(self):
        space = SearchSpace(
            atoms=2,
            fragment=HORN,
            postulates=(PostulateId.IC0, PostulateId.IC1, PostulateId.IC2, PostulateId.IC3),
        )
        assert search(space, CLO_SIG) == []

    def test_ic4_space_is_clean_for_triangular_sigma_closure(self):
        space = SearchSpace(atoms=2, fragment=HORN, postulates=(PostulateId.IC4,))
        assert search(space, CLO_SIG) == []

    def test_lex_of_drastic_violates_ic4(self):
        op = RefinedOperator(
            MergeOperator(CountingDistance.drastic(2), Aggregator.SIGMA),
            LexRefinement(AND2),
        )
        space = SearchSpace(
            atoms=2, fragment=HORN, max_profile_size=3, postulates=(PostulateId.IC4,)
        )
        witnesses = search(space, op)
        assert witnesses
        first = witnesses[0]
        assert first.instance.profiles[0].render() == "{a}; {b}"
        assert all(w.recheck(op) for w in witnesses)

    @pytest.mark.parametrize("fragment", [HORN, KROM])
    def test_fair_refinements_keep_ic4(self, fragment):
        space = SearchSpace(atoms=2, fragment=fragment, postulates=(PostulateId.IC4,))
        for agg in (Aggregator.SIGMA, Aggregator.GMAX):
            drastic_clo = RefinedOperator(
                MergeOperator(CountingDistance.drastic(2), agg),
                ClosureRefinement(fragment.beta),
            )
            lex_clo = RefinedOperator(
                MergeOperator(CountingDistance.hamming(2), agg),
                LexClosureRefinement(fragment.beta),
            )
            assert search(space, drastic_clo) == []
            assert search(space, lex_clo) == []

    def test_limit(self):
        op = RefinedOperator(
            MergeOperator(CountingDistance.drastic(2), Aggregator.SIGMA),
            LexRefinement(AND2),
        )
        space = SearchSpace(atoms=2, fragment=HORN, postulates=(PostulateId.IC4,))
        all_hits = search(space, op)
        assert len(all_hits) > 1
        assert len(search(space, op, limit=1)) == 1

    def test_deterministic(self):
        op = RefinedOperator(GMAX2, ClosureRefinement(AND2))
        space = SearchSpace(atoms=2, fragment=HORN, postulates=(PostulateId.IC4, PostulateId.IC8))
        first = [w.render() for w in search(space, op)]
        second = [w.render() for w in search(space, op)]
        assert first == second

    def test_space_too_large(self):
        with pytest.raises(SpaceTooLargeError):
            search(SearchSpace(atoms=5, fragment=HORN), SIG2)

    def test_max_bases_caps_the_pool(self):
        space = SearchSpace(atoms=2, fragment=HORN, max_bases=3)
        assert len(space.base_sets()) == 3

    def test_unrestricted_fragment_uses_all_sets(self):
        space = SearchSpace(atoms=2, fragment=None)
        assert len(space.base_sets()) == 15


class TestFixtures:
    def test_catalog_is_complete(self):
        assert fixture_ids() == (
            "ex1",
            "ex3",
            "prop3-horn",
            "prop3-krom",
            "prop4-horn",
            "prop4-krom",
            "prop6-fairness",
            "prop8-ic5",
            "prop8-ic7-horn",
            "prop8-ic7-krom",
            "prop9-ic4",
            "prop10-nonfair",
            "prop11-ic6",
        )

    @pytest.mark.parametrize("fixture_id", list(fixture_ids()))
    def test_every_fixture_reproduces(self, fixture_id):
        report = reproduce(fixture_id)
        failing = [r for r in report.rows if not r.ok]
        assert report.ok, failing

    def test_unknown_fixture(self):
        with pytest.raises(UnknownFixtureError):
            reproduce("nosuch")

    def test_report_rendering(self):
        report = reproduce("ex1")
        text = report.render_text()
        assert "all cells match" in text
        records = report.records()
        assert all(r[0] == "check" and r[-1] == "pass" for r in records)
        assert len(records) == len(report.rows)

    def test_ex1_table_cells(self):
        report = reproduce("ex1")
        cells = {r.label: r.actual for r in report.rows}
        assert cells["row {} sigma"] == "2"
        assert cells["row {a} sigma"] == "1"
        assert cells["row {b} sigma"] == "1"
        assert cells["row {} gmax"] == "(1,1)"
        assert cells["row {a} gmax"] == "(1,0)"
        assert cells["merge sigma"] == "{a}, {b}"
