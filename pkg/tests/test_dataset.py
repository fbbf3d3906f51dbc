import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rupminer.dataset import (GeneratorParams, ParseError, compute_item_recency, compute_item_twu,
                              generate_synthetic, item_utility, parse_profit_table,
                              parse_transactions, parse_utility_format, pattern_utility,
                              recency_table, running_example, total_utility, transaction_recency,
                              transaction_utility)

TU = [36, 15, 27, 38, 42, 9, 62, 23, 34, 39]


def by_label(db, mapping):
    return {db.labels[i]: v for i, v in mapping.items()}


class TestProfitTable:
    def test_running_example(self):
        table = parse_profit_table("a 6\nb 1\nc 10\nd 7\ne 5")
        assert table.as_dict() == {"a": 6, "b": 1, "c": 10, "d": 7, "e": 5}
        assert table.index == {"a": 0, "b": 1, "c": 2, "d": 3, "e": 4}

    def test_empty(self):
        assert len(parse_profit_table("")) == 0

    def test_duplicate(self):
        with pytest.raises(ParseError, match='duplicate item "a"'):
            parse_profit_table("a 6\na 7")

    @pytest.mark.parametrize("text", ["a six", "a 1.5", "a -3"])
    def test_bad_profit_names_line(self, text):
        with pytest.raises(ParseError, match="line 2"):
            parse_profit_table("b 1\n" + text)

    def test_comments_and_crlf(self):
        table = parse_profit_table("# profits\r\na 6\r\n\r\nb 1 # cheap\r\n")
        assert table.as_dict() == {"a": 6, "b": 1}


class TestTransactions:
    def test_table1(self, db):
        assert db.n == 10
        assert [t.tid for t in db.transactions] == list(range(1, 11))
        assert db.names(db.transactions[0].items) == ["a", "c", "d"]
        assert db.transactions[0].quantities == (2, 1, 2)

    def test_merge_duplicates(self, ptable):
        db = parse_transactions("a:2 a:3", ptable)
        assert db.n == 1
        assert db.transactions[0].items == (0,)
        assert db.transactions[0].quantities == (5,)

    def test_unknown_item(self, ptable):
        with pytest.raises(ParseError, match='line 1: unknown item "x"'):
            parse_transactions("x:1", ptable)

    @pytest.mark.parametrize("tok", ["a:0", "a:-1"])
    def test_non_positive_quantity(self, ptable, tok):
        with pytest.raises(ParseError):
            parse_transactions(tok, ptable)

    def test_blank_lines_do_not_consume_tids(self, ptable):
        db = parse_transactions("a:1\n\n# note\nb:1\n", ptable)
        assert [t.tid for t in db.transactions] == [1, 2]

    def test_timestamps_validate_order(self, ptable):
        parse_transactions("@2016-01-02T09:30 a:1\n@2016-01-02T10:20 b:1", ptable)
        with pytest.raises(ParseError, match="line 2"):
            parse_transactions("@2016-01-02T10:20 a:1\n@2016-01-02T09:30 b:1", ptable)

    def test_round_trip(self, db, ptable):
        again = parse_transactions(db.to_native_text(), parse_profit_table(ptable.to_text()))
        assert again.transactions == db.transactions
        assert again.labels == db.labels

    def test_builtin_running_example_matches_files(self, db):
        builtin, _ = running_example()
        assert builtin.transactions == db.transactions


class TestUtilityFormat:
    def test_basic(self):
        db = parse_utility_format("1 2:30:10 20")
        t = db.transactions[0]
        assert db.labels == ["1", "2"]
        assert t.utilities == (10, 20)
        assert t.tu == 30

    def test_tu_mismatch(self):
        with pytest.raises(ParseError, match="30"):
            parse_utility_format("1 2:25:10 20")

    def test_count_mismatch(self):
        with pytest.raises(ParseError, match="2 items but 1 utilities"):
            parse_utility_format("1 2:10:10")

    def test_t3(self):
        db = parse_utility_format("b c e:27:2 10 15")
        assert transaction_utility(db.transactions[0]) == 27

    def test_table1_equivalent(self, data_dir, db):
        udb = parse_utility_format((data_dir / "table1_utility.txt").read_text())
        assert [t.tu for t in udb.transactions] == TU
        assert by_label(udb, compute_item_twu(udb)) == by_label(db, compute_item_twu(db))
        assert udb.ptable is None


class TestRecency:
    def test_worked_values(self):
        assert transaction_recency(10, 1, 0.1) == pytest.approx(0.3874, abs=1e-4)
        assert transaction_recency(10, 8, 0.1) == pytest.approx(0.8100, abs=1e-4)

    def test_current_transaction(self):
        for delta in (0.01, 0.5, 0.99):
            assert transaction_recency(10, 10, delta) == 1.0

    @pytest.mark.parametrize("q", [0, 11])
    def test_out_of_range(self, q):
        with pytest.raises(ValueError):
            transaction_recency(10, q, 0.1)

    def test_all_running_example_values(self):
        printed = [0.3874, 0.4305, 0.4783, 0.5314, 0.5905, 0.6561, 0.7290, 0.8100, 0.9000, 1.0]
        assert recency_table(10, 0.1)[1:] == pytest.approx(printed, abs=1e-4)

    @given(n=st.integers(2, 60), delta=st.floats(0.001, 0.999))
    def test_strictly_increasing(self, n, delta):
        rec = recency_table(n, delta)[1:]
        assert rec[-1] == 1.0
        assert all(a < b for a, b in zip(rec, rec[1:]))


class TestUtility:
    def test_item_utility(self, db, ids):
        t1, t5 = db.transactions[0], db.transactions[4]
        assert item_utility(ids("c")[0], t1) == 10
        assert item_utility(ids("d")[0], t5) == 28

    def test_item_absent(self, db, ids):
        with pytest.raises(KeyError):
            item_utility(ids("b")[0], db.transactions[0])

    def test_pattern_utility(self, db, ids):
        assert pattern_utility(ids("acd"), db) == 137
        assert pattern_utility(ids("ad"), db.transactions[:1]) == 26
        assert pattern_utility(ids("abcde"), db) == 0

    def test_transaction_utilities(self, db):
        assert [transaction_utility(t) for t in db.transactions] == TU
        assert transaction_utility(db.transactions[6]) == 62

    def test_single_item_transaction(self, ptable):
        assert parse_transactions("b:1", ptable).transactions[0].tu == 1

    def test_total_utility(self, db):
        assert total_utility(db) == 325
        assert total_utility(db.head(0)) == 0
        assert total_utility(db.head(2)) == 51

    def test_twu(self, db):
        assert by_label(db, compute_item_twu(db)) == {"e": 112, "b": 116, "a": 217, "c": 236, "d": 251}

    def test_twu_unused_item(self, ptable):
        db = parse_transactions("a:1", ptable)
        twu = by_label(db, compute_item_twu(db))
        assert twu["a"] == 6 and twu["b"] == 0

    def test_item_recency(self, db):
        rec = by_label(db, compute_item_recency(db, 0.1))
        assert rec["b"] == pytest.approx(2.9654, abs=1e-4)
        assert rec["a"] == pytest.approx(3.2383, abs=1e-4)

    def test_item_only_in_last_transaction(self, ptable):
        db = parse_transactions("a:1\na:1 b:2", ptable)
        assert by_label(db, compute_item_recency(db, 0.3))["b"] == 1.0


@st.composite
def native_db(draw):
    labels = [f"x{i}" for i in range(draw(st.integers(1, 8)))]
    profits = {l: draw(st.integers(0, 50)) for l in labels}
    rows = draw(st.lists(st.lists(st.tuples(st.sampled_from(labels), st.integers(1, 9)), min_size=1, max_size=6),
                         min_size=1, max_size=15))
    ptable = parse_profit_table("".join(f"{l} {p}\n" for l, p in profits.items()))
    text = "\n".join(" ".join(f"{l}:{q}" for l, q in row) for row in rows)
    return parse_transactions(text, ptable)


@settings(max_examples=60)
@given(db=native_db(), delta=st.floats(0.01, 1.0))
def test_invariants(db, delta):
    tu = total_utility(db)
    assert tu == sum(sum(t.utilities) for t in db.transactions)
    twu = compute_item_twu(db)
    rec = compute_item_recency(db, delta)
    mass = sum(recency_table(db.n, delta)[1:])
    for i in range(db.m):
        assert pattern_utility((i,), db) <= twu[i] <= tu
        assert rec[i] <= mass + 1e-12
    for t in db.transactions:
        assert len(set(t.items)) == len(t.items)
        assert sum(item_utility(i, t) for i in t.items) == t.tu
    again = parse_transactions(db.to_native_text(), db.ptable)
    assert again.transactions == db.transactions


class TestGenerator:
    params = GeneratorParams(200, 30, 6, seed=42)

    def test_deterministic(self):
        a_db, a_pt = generate_synthetic(self.params)
        b_db, b_pt = generate_synthetic(self.params)
        assert a_db.to_native_text() == b_db.to_native_text()
        assert a_pt.to_text() == b_pt.to_text()

    def test_seed_matters(self):
        other = GeneratorParams(200, 30, 6, seed=43)
        assert generate_synthetic(self.params)[0].to_native_text() != generate_synthetic(other)[0].to_native_text()

    def test_ranges(self):
        db, ptable = generate_synthetic(self.params)
        assert all(1 <= q <= 5 for t in db.transactions for q in t.quantities)
        assert all(1 <= p <= 1000 for p in ptable.profits)
        assert all(len(set(t.items)) == len(t.items) >= 1 for t in db.transactions)
        assert db.n == 200

    def test_average_length(self):
        db, _ = generate_synthetic(GeneratorParams(2000, 100, 8, seed=1))
        mean = sum(len(t.items) for t in db.transactions) / db.n
        assert 7.5 < mean < 8.5

    def test_output_parses(self):
        db, ptable = generate_synthetic(self.params)
        again = parse_transactions(db.to_native_text(), parse_profit_table(ptable.to_text()))
        assert again.transactions == db.transactions

    @pytest.mark.parametrize("args", [(0, 10, 3), (10, 0, 3), (10, 5, 6), (10, 5, 0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            generate_synthetic(GeneratorParams(*args))
