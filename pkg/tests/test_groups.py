"""Cayley-table groups: validation, builtins, subgroups, element parsing."""

import pytest
from hypothesis import given, settings, strategies as st

from neighborhood_bound.groups import (
    FiniteGroup,
    MissingInverse,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    ParseError,
    Subgroup,
    TooLarge,
    all_subgroups,
    builtin_group,
    cyclic_group,
    dihedral_group,
    element_index_from_text,
    group_from_json_dict,
    group_from_table,
    group_to_json_dict,
    is_abelian,
    product_group,
    quaternion_group,
    subgroup_from_generators,
    symmetric_group,
)

# a Latin square of order 5 with two-sided identity and two-sided inverses
# that is nevertheless not associative: (1*1)*2 = 2 but 1*(1*2) = 4
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

# a Latin square of order 5 with two-sided identity where element 2 has a
# right inverse (3) that is not also a left inverse
ONE_SIDED_INVERSE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


class TestValidation:
    def test_klein_four_from_table(self):
        table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        g = group_from_table(table)
        assert g.order == 4
        assert g.identity == 0
        assert all(g.mul(a, a) == 0 for a in g.elements)
        assert is_abelian(g)

    def test_ragged_table(self):
        with pytest.raises(ValueError, match="square"):
            group_from_table([[0, 1], [1]])

    def test_repeated_cell_in_row(self):
        with pytest.raises(NotLatinSquare, match="row"):
            group_from_table([[0, 0], [1, 1]])

    def test_repeated_cell_in_column(self):
        # rows are fine, column 0 repeats
        with pytest.raises(NotLatinSquare):
            group_from_table([[0, 1], [0, 1]])

    def test_no_identity(self):
        # Latin square of order 3 with no identity row at all
        with pytest.raises(NoIdentity):
            group_from_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])

    def test_non_associative_loop_rejected(self):
        with pytest.raises(NotAssociative) as err:
            group_from_table(NONASSOC_LOOP)
        # names the violating triple
        assert "*" in str(err.value)

    def test_missing_inverse(self):
        with pytest.raises(MissingInverse, match="not a left inverse"):
            group_from_table(ONE_SIDED_INVERSE_LOOP)

    def test_out_of_range_cell(self):
        with pytest.raises(NotLatinSquare):
            group_from_table([[0, 2], [2, 0]])


class TestBuiltins:
    @pytest.mark.parametrize(
        "spec, order, abelian",
        [
            ("C1", 1, True),
            ("C8", 8, True),
            ("D3", 6, False),
            ("D4", 8, False),
            ("Q8", 8, False),
            ("S3", 6, False),
            ("S4", 24, False),
            ("C2xC4", 8, True),
            ("C2xC2xC2", 8, True),
        ],
    )
    def test_orders_and_commutativity(self, spec, order, abelian):
        g = builtin_group(spec)
        assert g.order == order
        assert is_abelian(g) == abelian

    def test_cyclic_structure(self):
        g = cyclic_group(5)
        assert [g.mul(1, k) for k in range(5)] == [1, 2, 3, 4, 0]
        assert g.inv(2) == 3

    def test_dihedral_relations(self):
        g = dihedral_group(4)
        r, s = 1, 4  # names "r1" and "s0"
        assert g.name(r) == "r1" and g.name(s) == "s0"
        # s r s = r^-1
        assert g.mul(g.mul(s, r), s) == g.inv(r)
        # rotations form a cyclic subgroup
        assert g.mul(r, r) == 2

    def test_quaternion_relations(self):
        g = quaternion_group()
        by_name = {g.name(a): a for a in g.elements}
        i, j, k = by_name["i"], by_name["j"], by_name["k"]
        minus_one = by_name["-1"]
        assert g.mul(i, i) == g.mul(j, j) == g.mul(k, k) == minus_one
        assert g.mul(i, j) == k
        assert g.mul(j, i) == by_name["-k"]

    def test_symmetric_group_composition(self):
        g = symmetric_group(3)
        names = [g.name(a) for a in g.elements]
        assert names[0] == "123"
        swap = names.index("213")  # transposition (1 2)
        cyc = names.index("231")  # maps 1->2, 2->3, 3->1
        # right-to-left composition: (swap ∘ cyc)(1) = swap(2) = 1
        assert g.name(g.mul(swap, cyc)) == "132"

    def test_product_naming(self):
        g = builtin_group("C2xC2")
        assert {g.name(a) for a in g.elements} == {
            "(0,0)", "(0,1)", "(1,0)", "(1,1)"
        }

    def test_product_of_one_factor_is_identity_operation(self):
        g = cyclic_group(3)
        assert product_group([g]) is g

    def test_spec_parsing_is_case_insensitive(self):
        assert builtin_group("c2xd3").order == 12

    def test_bad_specs_rejected(self):
        for bad in ("", "C0", "Q3", "K4", "C2x", "C2+C2"):
            with pytest.raises(ParseError):
                builtin_group(bad)

    def test_oversized_spec_rejected_before_building(self):
        with pytest.raises(TooLarge):
            builtin_group("C2000")
        with pytest.raises(TooLarge):
            builtin_group("S5xS5")  # 14400 > 1024, caught before either factor is built

    @given(st.sampled_from(["C4", "C6", "D3", "D5", "Q8", "S3", "C2xC3"]))
    @settings(max_examples=20, deadline=None)
    def test_builtins_satisfy_group_axioms(self, spec):
        g = builtin_group(spec)
        # revalidating through the table constructor re-runs every axiom check
        rebuilt = group_from_table(g.table, g.element_names)
        assert rebuilt.table == g.table
        assert rebuilt.identity == g.identity


class TestElementParsing:
    def test_exact_name(self):
        g = dihedral_group(3)
        assert element_index_from_text(g, "s2") == 5

    def test_identity_alias(self):
        g = cyclic_group(4)
        assert element_index_from_text(g, "e") == 0

    def test_generator_alias(self):
        g = cyclic_group(4)
        assert element_index_from_text(g, "a") == 1

    def test_cycle_notation(self):
        g = symmetric_group(3)
        assert g.name(element_index_from_text(g, "(12)")) == "213"
        assert g.name(element_index_from_text(g, "(123)")) == "231"
        assert g.name(element_index_from_text(g, "()")) == "123"

    def test_cycle_notation_rejects_overlap(self):
        g = symmetric_group(3)
        with pytest.raises(ParseError, match="cycle"):
            element_index_from_text(g, "(12)(13)")

    def test_bare_index(self):
        g = quaternion_group()
        assert element_index_from_text(g, "3") == 3

    def test_unknown_name_lists_choices(self):
        g = cyclic_group(2)
        with pytest.raises(ParseError, match="names"):
            element_index_from_text(g, "bogus")


class TestSubgroups:
    def test_generated_subgroup_is_closed(self):
        g = symmetric_group(3)
        cyc = element_index_from_text(g, "(123)")
        h = subgroup_from_generators(g, [cyc])
        assert h.order == 3
        assert g.identity in h.elements

    def test_trivial_and_full(self):
        g = cyclic_group(6)
        assert subgroup_from_generators(g, []).order == 1
        assert subgroup_from_generators(g, [1]).order == 6

    def test_subgroup_validation(self):
        g = cyclic_group(4)
        with pytest.raises(ValueError):
            Subgroup(g, (0, 1))  # not closed: 1+1=2 missing

    @pytest.mark.parametrize(
        "spec, count",
        [
            ("C1", 1),
            ("C2", 2),
            ("C6", 4),
            ("C8", 4),
            ("C2xC2", 5),
            ("C2xC4", 8),
            ("C2xC2xC2", 16),
            ("D3", 6),
            ("D4", 10),
            ("Q8", 6),
            ("S3", 6),
        ],
    )
    def test_subgroup_counts(self, spec, count):
        # classical subgroup lattice sizes
        g = builtin_group(spec)
        subs = all_subgroups(g)
        assert len(subs) == count
        orders = [s.order for s in subs]
        assert orders == sorted(orders)
        assert all(g.order % s.order == 0 for s in subs)  # Lagrange

    def test_lattice_guard(self):
        with pytest.raises(TooLarge):
            all_subgroups(builtin_group("S5"))

    @given(st.sampled_from(["C6", "D4", "Q8", "S3"]), st.data())
    @settings(max_examples=50, deadline=None)
    def test_every_generated_set_lands_in_lattice(self, spec, data):
        g = builtin_group(spec)
        gens = data.draw(
            st.lists(st.integers(min_value=0, max_value=g.order - 1), max_size=3)
        )
        h = subgroup_from_generators(g, gens)
        lattice = {s.elements for s in all_subgroups(g)}
        assert h.elements in lattice


class TestSerialization:
    def test_round_trip(self):
        g = dihedral_group(3)
        back = group_from_json_dict(group_to_json_dict(g))
        assert back.table == g.table
        assert back.element_names == g.element_names

    def test_order_mismatch(self):
        with pytest.raises(ParseError):
            group_from_json_dict({"order": 3, "table": [[0, 1], [1, 0]], "names": ["e", "a"]})

    def test_revalidates_table(self):
        with pytest.raises(NoIdentity):
            group_from_json_dict(
                {
                    "order": 3,
                    "table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]],
                    "names": ["x", "y", "z"],
                }
            )
