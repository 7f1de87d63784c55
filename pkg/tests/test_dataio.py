from __future__ import annotations

import numpy as np
import pytest

from contactbg import (
    DataError,
    InsufficientDataError,
    Provenance,
    load_force_measurements,
    load_va_measurements,
    write_csv,
)
from contactbg.dataio import read_csv_columns


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadVa:
    def test_two_rows(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n1e-6,0.005\n1e-5,0.0119\n")
        data = load_va_measurements(path)
        assert data.shape == (2, 2)
        assert data[0, 0] == 1e-6 and data[1, 1] == 0.0119

    def test_empty_data_section(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n")
        with pytest.raises(InsufficientDataError):
            load_va_measurements(path)

    def test_unsorted_rows_sorted_on_load(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n1e-5,2\n1e-6,1\n5e-6,3\n")
        data = load_va_measurements(path)
        assert np.all(np.diff(data[:, 0]) > 0)
        assert data[0, 1] == 1.0

    def test_bad_header(self, tmp_path):
        path = write(tmp_path, "sep,volt\n1e-6,0.005\n")
        with pytest.raises(DataError, match="header"):
            load_va_measurements(path)

    def test_parse_error_names_line(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n1e-6,0.005\nbogus,0.001\n")
        with pytest.raises(DataError, match="line 3"):
            load_va_measurements(path)

    def test_nonpositive_d_names_line(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n-1e-6,0.005\n1e-6,0.001\n")
        with pytest.raises(DataError, match="separation must be > 0"):
            load_va_measurements(path)

    def test_duplicate_d_rejected(self, tmp_path):
        path = write(tmp_path, "d_m,va_V\n1e-6,0.005\n1e-6,0.006\n")
        with pytest.raises(DataError, match="duplicate"):
            load_va_measurements(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_va_measurements(tmp_path / "nope.csv")


class TestLoadForce:
    def test_two_rows(self, tmp_path):
        path = write(tmp_path, "d_m,F_N\n1e-6,1e-12\n2e-6,2e-13\n")
        curve = load_force_measurements(path)
        assert curve.provenance is Provenance.MEASURED
        assert curve.f[1] == 2e-13

    def test_nan_field_names_row(self, tmp_path):
        path = write(tmp_path, "d_m,F_N\n1e-6,1e-12\n2e-6,nan\n")
        with pytest.raises(DataError, match="line 3"):
            load_force_measurements(path)

    def test_descending_input_ascending_output(self, tmp_path):
        path = write(tmp_path, "d_m,F_N\n3e-6,3\n2e-6,2\n1e-6,1\n")
        curve = load_force_measurements(path)
        assert np.all(np.diff(curve.d) > 0)
        np.testing.assert_array_equal(curve.f, [1.0, 2.0, 3.0])

    def test_wrong_field_count(self, tmp_path):
        path = write(tmp_path, "d_m,F_N\n1e-6,1e-12,7\n")
        with pytest.raises(DataError, match="fields"):
            load_force_measurements(path)


class TestRoundTrip:
    def test_seventeen_digit_round_trip(self, tmp_path):
        rng = np.random.default_rng(7)
        d = np.sort(rng.uniform(1e-7, 1e-4, 64))
        f = rng.normal(0.0, 1e-12, 64) * 10.0 ** rng.integers(-6, 6, 64)
        path = tmp_path / "out.csv"
        write_csv(path, ["d_m", "F_N"], [d, f])
        header, data = read_csv_columns(path)
        assert header == ["d_m", "F_N"]
        assert np.array_equal(data[:, 0], d)
        assert np.array_equal(data[:, 1], f)
