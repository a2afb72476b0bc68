import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from snuclear import bundle
from snuclear.cli import main
from snuclear.factorization import chain_product, factor_product
from snuclear.linalg import Matrix
from snuclear.operators import random_nuclear


@pytest.fixture
def chain():
    return [random_nuclear(4, 3, 2 / 3, 1.5, 3, seed=50, domain_norm="linf", codomain_norm="l1"),
            random_nuclear(5, 4, 1.0, 0.5, 2, seed=51, domain_norm="l1", codomain_norm="l2", complex_entries=True)]


@pytest.fixture
def chain_file(tmp_path, chain):
    path = tmp_path / "chain.json"
    bundle.save_chain(path, chain)
    return path


class TestBundle:
    def test_matrix_round_trip(self):
        m = Matrix(np.array([[1 + 2j, 3], [0, -1j]]), "l1", "linf")
        back = bundle.matrix_from_dict(json.loads(json.dumps(bundle.matrix_to_dict(m))))
        np.testing.assert_array_equal(back.entries, m.entries)
        assert (back.domain_norm, back.codomain_norm) == ("l1", "linf")

    def test_chain_round_trip(self, chain, chain_file):
        back = bundle.load_chain(chain_file)
        assert len(back) == 2
        for a, b in zip(chain, back):
            np.testing.assert_array_equal(a.matrix.entries, b.matrix.entries)
            assert a.nu_bound == pytest.approx(b.nu_bound, rel=1e-15)
            assert a.s == b.s

    def test_single_operator_file(self, tmp_path, chain):
        bundle.save_chain(tmp_path / "one.json", chain[:1])
        assert "chain" not in json.loads((tmp_path / "one.json").read_text())
        assert len(bundle.load_chain(tmp_path / "one.json")) == 1

    def test_certificate_round_trip(self, tmp_path, chain):
        cert = factor_product(chain)
        bundle.save_certificate(tmp_path / "c.json", cert)
        back = bundle.load_certificate(tmp_path / "c.json")
        np.testing.assert_array_equal(back.product(), cert.product())
        assert back.budget == cert.budget
        assert back.gamma_value == cert.gamma_value

    def test_infinite_r_written_as_string(self, tmp_path):
        cert = factor_product([random_nuclear(3, 3, 1.0, 1.0, 2, seed=52)])
        d = bundle.certificate_to_dict(cert)
        assert d["r"] == "inf"
        assert math.isinf(bundle.certificate_from_dict(json.loads(json.dumps(d))).budget.r)

    def test_inconsistent_matrix_block(self, chain):
        d = bundle.operator_to_dict(chain[0])
        d["entries_re"][0] += 1.0
        with pytest.raises(ValueError, match="does not match"):
            bundle.operator_from_dict(d)

    def test_missing_field(self, chain):
        d = bundle.operator_to_dict(chain[0])
        del d["s"]
        with pytest.raises(ValueError, match="lacks field"):
            bundle.operator_from_dict(d)

    def test_wrong_entry_count(self, chain):
        d = bundle.operator_to_dict(chain[0])
        d["entries_im"].pop()
        with pytest.raises(ValueError, match="expected"):
            bundle.operator_from_dict(d)


class TestCli:
    def test_factor_and_verify(self, tmp_path, chain_file, capsys):
        cert = tmp_path / "cert.json"
        assert main(["factor", str(chain_file), "-o", str(cert)]) == 0
        assert "PASS" in capsys.readouterr().out
        assert main(["verify", str(cert), str(chain_file)]) == 0

    def test_verify_tampered(self, tmp_path, chain_file):
        cert = tmp_path / "cert.json"
        main(["factor", str(chain_file), "-o", str(cert)])
        d = json.loads(cert.read_text())
        d["U"]["entries_re"] = [2 * x for x in d["U"]["entries_re"]]
        cert.write_text(json.dumps(d))
        assert main(["verify", str(cert), str(chain_file)]) == 1

    def test_bad_bundle(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"rows": 2}')
        assert main(["factor", str(bad), "-o", str(tmp_path / "c.json")]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["factor", str(tmp_path / "nope.json"), "-o", str(tmp_path / "c.json")]) == 2

    def test_not_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        assert main(["factor", str(bad), "-o", str(tmp_path / "c.json")]) == 2

    def test_carleman_then_diag(self, tmp_path, capsys):
        coeffs, prof = tmp_path / "c.csv", tmp_path / "p.csv"
        assert main(["carleman", "--n", "1024", "-o", str(coeffs)]) == 0
        assert main(["diag", str(coeffs), "--p", "2", "-o", str(prof)]) == 0
        out = capsys.readouterr().out
        assert "sup_norm" in out
        assert "verdict=bounded" in out
        rows = list(csv.DictReader(prof.open()))
        assert [int(r["N"]) for r in rows] == [16, 32, 64, 128, 256, 512, 1024]

    def test_carleman_bad_beta(self, tmp_path):
        assert main(["carleman", "--n", "64", "--beta", "1", "-o", str(tmp_path / "c.csv")]) == 2

    def test_sweep(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--n-list", "256,512", "--seed", "3", "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert list(rows[0]) == ["N", "beta", "exponent", "partial_sum", "slope", "verdict", "sup_norm",
                                 "inferred_r_lower"]
        assert len(rows) == 6
        meta = json.loads((tmp_path / "sweep.csv.meta.json").read_text())
        assert meta["seed"] == 3
        assert "inferred r_lower" in capsys.readouterr().out

    def test_selftest(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") >= 10

    def test_console_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "snuclear.cli", "carleman", "--n", "8", "-o",
                               str(tmp_path / "c.csv")], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("N=8")


def test_factor_output_matches_library(tmp_path, chain, chain_file):
    cert_path = tmp_path / "cert.json"
    main(["factor", str(chain_file), "-o", str(cert_path)])
    cert = bundle.load_certificate(cert_path)
    np.testing.assert_allclose(cert.product(), chain_product(chain).entries, atol=1e-12)
