import json
import os

import pytest

from acslab.adders import error_metrics, make_parametric
from acslab.cli import main
from acslab.netlist import ripple_carry_text


def fx(fixtures_dir, name):
    return os.path.join(fixtures_dir, name)


class TestAdderMetrics:
    def test_builtin_exact_all_zero(self, tmp_path):
        out = tmp_path / "reports"
        assert main(["adder-metrics", "--builtin", "exact:12",
                     "--out", str(out), "--seed", "1"]) == 0
        data = json.loads((out / "exact_12.json").read_text())
        assert data["mae_pct"] == 0.0 and data["ep_pct"] == 0.0 \
            and data["wce"] == 0

    def test_cli_output_equals_library_call(self, tmp_path):
        out = tmp_path / "reports"
        assert main(["adder-metrics", "--builtin", "lower_or:12:6",
                     "--out", str(out), "--seed", "7"]) == 0
        cli_bytes = (out / "lower_or_12_6.json").read_bytes()
        lib_bytes = error_metrics(make_parametric("lower_or", 12, 6),
                                  "exhaustive", seed=7).to_json().encode()
        assert cli_bytes == lib_bytes

    def test_netlist_dir_one_report_per_file(self, tmp_path):
        nets = tmp_path / "nets"
        nets.mkdir()
        for w in (2, 3, 4):
            (nets / f"rca_{w}.net").write_text(ripple_carry_text(w))
        out = tmp_path / "reports"
        assert main(["adder-metrics", "--netlist-dir", str(nets),
                     "--out", str(out), "--seed", "1"]) == 0
        reports = sorted(p.name for p in out.glob("*.json"))
        assert reports == ["rca_2.json", "rca_3.json", "rca_4.json"]

    def test_bad_netlist_nonzero_exit(self, tmp_path, capsys):
        nets = tmp_path / "nets"
        nets.mkdir()
        (nets / "good.net").write_text(ripple_carry_text(2))
        (nets / "bad.net").write_text("inputs a0 b0\ns0 = FROB(a0)\noutputs s0\n")
        out = tmp_path / "reports"
        assert main(["adder-metrics", "--netlist-dir", str(nets),
                     "--out", str(out), "--seed", "1"]) == 1
        assert (out / "good.net".replace(".net", ".json")).exists()
        assert "bad.net" in capsys.readouterr().err

    def test_no_adders_is_usage_error(self, tmp_path):
        assert main(["adder-metrics", "--out", str(tmp_path / "r")]) == 2

    def test_manifest_written(self, tmp_path):
        out = tmp_path / "reports"
        main(["adder-metrics", "--builtin", "exact:8", "--out", str(out),
              "--seed", "5"])
        manifest = json.loads((tmp_path / "reports.manifest.json").read_text())
        assert manifest["tool"] == "acslab"
        assert manifest["seed"] == 5
        assert manifest["subcommand"] == "adder-metrics"

    def test_sampled_jobs_do_not_change_bytes(self, tmp_path):
        outs = []
        for jobs in ("1", "4"):
            out = tmp_path / f"r{jobs}"
            assert main(["adder-metrics", "--builtin", "truncated:16:9",
                         "--mode", "sampled", "--samples", "2200000",
                         "--seed", "3", "--jobs", jobs, "--out", str(out)]) == 0
            outs.append((out / "truncated_16_9.json").read_bytes())
        assert outs[0] == outs[1]


class TestBerSweep:
    def test_default_config_has_26_snr_points(self, tmp_path, corpus_text):
        corpus = tmp_path / "tiny.txt"
        corpus.write_text(corpus_text[:60])
        out = tmp_path / "sweep.csv"
        assert main(["ber-sweep", "--adders", "exact:12", "--corpus",
                     str(corpus), "--out", str(out), "--seed", "1",
                     "--runs", "1"]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 26
        snrs = [float(l.split(",")[2]) for l in lines[1:]]
        assert snrs == [float(s) for s in range(-15, 11)]

    def test_same_seed_identical_bytes(self, tmp_path, config_path):
        corpus = tmp_path / "c.txt"
        corpus.write_text("determinism check corpus 0123456789")
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            assert main(["ber-sweep", "--config", str(config_path),
                         "--adders", "exact:12", "--corpus", str(corpus),
                         "--out", str(out), "--seed", "21"]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_runs_recorded_in_rows_and_manifest(self, tmp_path, config_path):
        corpus = tmp_path / "c.txt"
        corpus.write_text("short corpus for runs recording")
        out = tmp_path / "sweep.csv"
        assert main(["ber-sweep", "--config", str(config_path), "--adders",
                     "exact:12", "--corpus", str(corpus), "--out", str(out),
                     "--seed", "2", "--runs", "12"]) == 0
        lines = out.read_text().splitlines()[1:]
        assert all(l.split(",")[5] == "12" for l in lines)
        manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
        assert manifest["config"]["runs_per_snr"] == 12
        assert manifest["seed"] == 2
        assert str(corpus) in manifest["inputs"]

    def test_modulation_all_expands(self, tmp_path, config_path):
        corpus = tmp_path / "c.txt"
        corpus.write_text("all modulation expansion corpus")
        out = tmp_path / "sweep.csv"
        assert main(["ber-sweep", "--config", str(config_path), "--adders",
                     "exact:12", "--corpus", str(corpus), "--out", str(out),
                     "--seed", "3", "--modulation", "all"]) == 0
        mods = {l.split(",")[1] for l in out.read_text().splitlines()[1:]}
        assert mods == {"BASK", "BPSK", "QPSK"}

    def test_invalid_config_lists_all_errors(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"modulation": "FM", "samples_per_bit": 1,
                                   "runs_per_snr": 0}))
        corpus = tmp_path / "c.txt"
        corpus.write_text("x")
        assert main(["ber-sweep", "--config", str(bad), "--adders", "exact:12",
                     "--corpus", str(corpus), "--out", str(tmp_path / "o.csv"),
                     "--seed", "1"]) == 2
        err = capsys.readouterr().err
        assert err.count("config error") == 3


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "snr_db_range": [-8.0, -2.0], "runs_per_snr": 2, "master_seed": 0,
        "code": {"constraint_length": 3, "generators_octal": ["7", "5"]}}))
    return path


class TestPosTag:
    def run_fixture(self, fixtures_dir, tmp_path, adders, extra=()):
        out = tmp_path / "pos.csv"
        rc = main(["pos-tag", "--model", fx(fixtures_dir, "hmm_pos.json"),
                   "--sentences", fx(fixtures_dir, "pos_sentences.txt"),
                   "--gold", fx(fixtures_dir, "pos_gold.txt"),
                   "--adders", adders, "--out", str(out), *extra])
        return rc, out

    def test_exact_adder_scores_100(self, fixtures_dir, tmp_path):
        rc, out = self.run_fixture(fixtures_dir, tmp_path, "exact:16")
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "adder,accuracy_pct,tokens"
        rows = {l.split(",")[0]: l.split(",")[1:] for l in lines[1:]}
        assert rows["float_oracle"] == ["100.0", "11"]
        assert rows["exact_16"] == ["100.0", "11"]

    def test_k0_row_equals_exact_row(self, fixtures_dir, tmp_path):
        rc, out = self.run_fixture(fixtures_dir, tmp_path,
                                   "exact:16,lower_or:16:0")
        assert rc == 0
        lines = out.read_text().splitlines()[1:]
        vals = {l.split(",")[0]: l.split(",")[1] for l in lines}
        assert vals["lower_or_16_0"] == vals["exact_16"]

    def test_empty_sentences_usage_error(self, fixtures_dir, tmp_path):
        empty = tmp_path / "none.txt"
        empty.write_text("\n")
        out = tmp_path / "pos.csv"
        assert main(["pos-tag", "--model", fx(fixtures_dir, "hmm_pos.json"),
                     "--sentences", str(empty),
                     "--gold", fx(fixtures_dir, "pos_gold.txt"),
                     "--adders", "exact:16", "--out", str(out)]) == 2

    def test_gold_mismatch_lists_every_sentence(self, fixtures_dir, tmp_path,
                                                capsys):
        bad_gold = tmp_path / "gold.txt"
        bad_gold.write_text("DET\nDET NOUN VERB\nDET ADJ\n")
        out = tmp_path / "pos.csv"
        rc = main(["pos-tag", "--model", fx(fixtures_dir, "hmm_pos.json"),
                   "--sentences", fx(fixtures_dir, "pos_sentences.txt"),
                   "--gold", str(bad_gold),
                   "--adders", "exact:16", "--out", str(out)])
        assert rc == 2
        err = capsys.readouterr().err
        assert "sentence 1" in err and "sentence 3" in err

    def test_wrong_width_adder_fails(self, fixtures_dir, tmp_path):
        rc, _ = self.run_fixture(fixtures_dir, tmp_path, "exact:12")
        assert rc == 1


class TestDse:
    def test_missing_costs_file_exits_nonzero(self, fixtures_dir, tmp_path):
        assert main(["dse", "--accuracy", fx(fixtures_dir, "comm_accuracy.csv"),
                     "--costs", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "r.csv")]) == 1

    def test_eight_row_report_on_ber_view(self, fixtures_dir, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["dse", "--accuracy", fx(fixtures_dir, "comm_ber_8.csv"),
                     "--costs", fx(fixtures_dir, "comm_costs.csv"),
                     "--metric", "ber", "--modulation", "BASK",
                     "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 1 + 8

    def test_nlp_power_budget(self, fixtures_dir, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["dse", "--accuracy", fx(fixtures_dir, "nlp_accuracy.csv"),
                     "--costs", fx(fixtures_dir, "nlp_costs.csv"),
                     "--metric", "accuracy", "--baseline", "cla_16u",
                     "--max-power", "120", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()[1:]
        assert len(lines) == 4
        assert all(float(l.split(",")[2]) <= 60.0 for l in lines)
        savings = json.loads((tmp_path / "r.savings.json").read_text())
        assert savings["baseline"] == "cla_16u"

    def test_empty_filter_result_exit_zero(self, fixtures_dir, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["dse", "--accuracy", fx(fixtures_dir, "nlp_accuracy.csv"),
                     "--costs", fx(fixtures_dir, "nlp_costs.csv"),
                     "--max-power", "1", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[1:] == []

    def test_json_format(self, fixtures_dir, tmp_path):
        out = tmp_path / "r.json"
        assert main(["dse", "--accuracy", fx(fixtures_dir, "nlp_accuracy.csv"),
                     "--costs", fx(fixtures_dir, "nlp_costs.csv"),
                     "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert len(data) == 16 and all("pareto" in row for row in data)
