import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tern.data import (
    DataError,
    GravityData,
    TwoSampleData,
    read_gravity_csv,
    read_normal_csv,
    read_two_sample_csv,
    write_csv,
)

reals = st.floats(-1e12, 1e12, allow_nan=False, allow_infinity=False)


class TestRoundTrip:
    @given(st.lists(reals, min_size=1, max_size=30))
    def test_normal(self, tmp_path_factory, values):
        path = tmp_path_factory.mktemp("csv") / "x.csv"
        write_csv(path, np.array(values))
        assert np.array_equal(read_normal_csv(path), np.array(values))

    @given(st.lists(reals, min_size=1, max_size=10), st.lists(reals, min_size=1, max_size=10))
    def test_two_sample(self, tmp_path_factory, a, b):
        path = tmp_path_factory.mktemp("csv") / "ab.csv"
        write_csv(path, TwoSampleData(a, b))
        back = read_two_sample_csv(path)
        assert np.array_equal(back.a, a) and np.array_equal(back.b, b)

    @given(st.lists(st.tuples(st.floats(1e-3, 100), reals), min_size=1, max_size=10))
    def test_gravity(self, tmp_path_factory, rows):
        path = tmp_path_factory.mktemp("csv") / "g.csv"
        h, t = zip(*rows)
        write_csv(path, GravityData(h, t))
        back = read_gravity_csv(path)
        assert np.array_equal(back.heights, h) and np.array_equal(back.times, t)


class TestErrors:
    def _write(self, tmp_path, text):
        p = tmp_path / "in.csv"
        p.write_text(text, encoding="utf-8")
        return p

    def test_missing_column(self, tmp_path):
        with pytest.raises(DataError, match="missing column"):
            read_normal_csv(self._write(tmp_path, "y\n1\n"))

    def test_bad_number_names_line(self, tmp_path):
        with pytest.raises(DataError, match="line 3"):
            read_normal_csv(self._write(tmp_path, "x\n1\nabc\n"))

    def test_bad_group(self, tmp_path):
        with pytest.raises(DataError, match="group"):
            read_two_sample_csv(self._write(tmp_path, "group,y\na,1\nc,2\n"))

    def test_no_rows(self, tmp_path):
        with pytest.raises(DataError):
            read_normal_csv(self._write(tmp_path, "x\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_normal_csv(tmp_path / "nope.csv")

    def test_non_finite(self, tmp_path):
        with pytest.raises(DataError):
            read_normal_csv(self._write(tmp_path, "x\ninf\n"))

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            GravityData([1.0, 2.0], [0.1])

    def test_head(self):
        d = TwoSampleData([1, 2, 3], [4, 5])
        assert d.head(1).a.tolist() == [1.0] and d.swapped().a.tolist() == [4.0, 5.0]
