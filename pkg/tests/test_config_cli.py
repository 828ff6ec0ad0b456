import json

import numpy as np
import pytest

from nf_aliaser import ConfigError, load_config, resolve_config, run, sweep
from nf_aliaser.cli import main
from nf_aliaser.presets import PRESETS, preset_config


def small_config(**overrides):
    cfg = {
        "wave": {"lambda": 1.0},
        "tx": {"origin": [20.0, 0.0], "axes": [[1.0, 0.0]], "counts": [8],
               "spacings_lambda": [0.5]},
        "rx": {"origin": [0.0, 20.0], "axes": [[0.0, 1.0]], "counts": [8],
               "spacings_lambda": [0.5]},
        "scene": {"scatterer": [40.0, 40.0]},
        "grid": {"min": [30.0, 30.0], "max": [50.0, 50.0], "resolution": [16, 16]},
        "outputs": ["image", "partial_tx", "partial_rx", "mask"],
    }
    cfg.update(overrides)
    return cfg


class TestLoadConfig:
    def test_parses_json_text(self):
        config = load_config(json.dumps(small_config()))
        assert config.tx.num_elements == 8
        assert config.scene.reflectivity == 1.0 + 0.0j
        assert config.grid.resolution == (16, 16)

    def test_parses_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(small_config()))
        config = load_config(path)
        assert config.rx.role_tag == "receive"

    def test_missing_file(self):
        with pytest.raises(ConfigError, match="not found"):
            load_config("/no/such/config.json")

    def test_parse_error_reports_position(self):
        with pytest.raises(ConfigError, match=r"line 1, column \d+"):
            load_config('{"wave": {"la: 1}}')

    def test_empty_outputs_rejected(self):
        with pytest.raises(ConfigError, match="outputs"):
            resolve_config(small_config(outputs=[]))

    def test_unknown_output_rejected(self):
        with pytest.raises(ConfigError, match="unknown product"):
            resolve_config(small_config(outputs=["picture"]))

    def test_validation_names_field(self):
        bad = small_config()
        del bad["tx"]["counts"]
        with pytest.raises(ConfigError, match=r"tx\.counts"):
            resolve_config(bad)
        bad = small_config()
        bad["grid"]["resolution"] = [1, 16]
        with pytest.raises(ConfigError, match="grid"):
            resolve_config(bad)

    def test_defaults_recorded(self):
        config = resolve_config(small_config())
        thr = config.resolved["thresholds"]
        assert thr == {"epsilon_lambda": 0.1, "floor_db": -40.0, "support_db": -20.0,
                       "oracle_ratio": 0.5, "oversample": 8}
        assert config.resolved["scene"]["reflectivity_re"] == 1.0

    def test_unknown_threshold_rejected(self):
        with pytest.raises(ConfigError, match="thresholds"):
            resolve_config(small_config(thresholds={"epsilon": 0.1}))

    def test_sweep_output_requires_section(self):
        with pytest.raises(ConfigError, match="sweep"):
            resolve_config(small_config(outputs=["sweep"]))

    def test_wavelength_scales_lengths(self):
        cfg = small_config()
        cfg["wave"]["lambda"] = 2.0
        config = resolve_config(cfg)
        assert config.tx.spacings[0] == pytest.approx(1.0)
        assert config.scene.scatterer[0] == pytest.approx(80.0)
        # resolved echo stays in wavelength units
        assert config.resolved["tx"]["spacings_lambda"][0] == pytest.approx(0.5)


class TestPresets:
    def test_all_presets_resolve(self):
        for name in PRESETS:
            config = resolve_config(preset_config(name))
            assert config.grid.ndim == 2

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            preset_config("fig9")

    def test_fig1_layout(self):
        config = resolve_config(preset_config("fig1"))
        assert config.tx.counts == (64,)
        assert config.tx.spacings[0] == pytest.approx(500.0 / 64)
        np.testing.assert_allclose(config.tx.center, [500.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(config.rx.center, [0.0, 500.0], atol=1e-9)
        np.testing.assert_allclose(config.scene.scatterer, [1000.0, 1000.0])
        assert config.outputs == ("partial_tx", "partial_rx", "image", "mask")
        # the scatterer sits exactly at a cell center
        idx = config.grid.cell_index(config.scene.scatterer)
        centers = [config.grid.axis_centers(j)[i] for j, i in enumerate(idx)]
        np.testing.assert_allclose(centers, [1000.0, 1000.0], atol=1e-9)

    def test_fig2_presets_sweep(self):
        a = resolve_config(preset_config("fig2a"))
        assert a.sweep_param == "spacing" and a.sweep_values == (16, 64)
        b = resolve_config(preset_config("fig2b"))
        assert b.sweep_param == "length"
        c = resolve_config(preset_config("fig2c"))
        assert c.sweep_param == "dimensionality" and c.sweep_values == (1, 2)


class TestRun:
    def test_products_and_manifest(self, tmp_path):
        config = resolve_config(small_config())
        manifest = run(config, tmp_path / "out")
        names = {p["name"] for p in manifest["products"]}
        assert {"image.csv", "image.pgm", "partial_tx.csv", "partial_rx.csv",
                "mask.csv", "mask.pgm"} <= names
        assert (tmp_path / "out" / "manifest.json").exists()
        for p in manifest["products"]:
            assert (tmp_path / "out" / p["file"]).exists()
        assert manifest["config"]["thresholds"]["oversample"] == 8

    def test_mask_only_half_wavelength_all_ones(self, tmp_path):
        config = resolve_config(small_config(outputs=["mask"]))
        run(config, tmp_path / "out")
        rows = [line for line in (tmp_path / "out" / "mask.csv").read_text().splitlines()
                if not line.startswith("#")]
        assert rows == ["1"] * config.grid.num_cells

    def test_rerun_byte_identical(self, tmp_path):
        config = resolve_config(small_config())
        run(config, tmp_path / "a")
        run(config, tmp_path / "b")
        for name in ["manifest.json", "image.csv", "image.pgm", "mask.csv"]:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_spectrum_product(self, tmp_path):
        config = resolve_config(small_config(outputs=["spectrum"]))
        manifest = run(config, tmp_path / "out")
        names = {p["name"] for p in manifest["products"]}
        assert {"spectrum_tx_ax0.csv", "spectrum_rx_ax0.csv"} <= names
        text = (tmp_path / "out" / "spectrum_tx_ax0.csv").read_text()
        assert "# columns: wavenumber,magnitude_db" in text

    def test_csv_float_format(self, tmp_path):
        config = resolve_config(small_config(outputs=["partial_tx"]))
        run(config, tmp_path / "out")
        rows = [line for line in
                (tmp_path / "out" / "partial_tx.csv").read_text().splitlines()
                if not line.startswith("#")]
        assert len(rows) == config.grid.num_cells
        re_str, im_str = rows[0].split(",")
        # 17 significant digits round-trip exactly
        assert float(re_str) == complex(float(re_str), 0).real


class TestSweep:
    def test_spacing(self):
        config = resolve_config(small_config(outputs=["mask"]))
        rows = sweep(config, "spacing", [4, 8])
        assert [r["value"] for r in rows] == ["N4", "N8"]
        assert all(r["mask_cells"] >= 0 for r in rows)

    def test_length_with_counts(self):
        config = resolve_config(small_config(outputs=["mask"]))
        rows = sweep(config, "length", [{"length_lambda": 4.0, "count": 8},
                                        {"length_lambda": 8.0, "count": 16}])
        assert [r["value"] for r in rows] == ["L4_N8", "L8_N16"]

    def test_range(self):
        config = resolve_config(small_config(outputs=["mask"]))
        rows = sweep(config, "range", [[40.0, 40.0], [44.0, 36.0]])
        assert rows[0]["value"] == "pos40_40"

    def test_dimensionality(self):
        config = resolve_config(small_config(outputs=["mask"]))
        rows = sweep(config, "dimensionality", [1, 2])
        assert [r["value"] for r in rows] == ["1d", "2d"]
        assert rows[1]["mask_cells"] <= rows[0]["mask_cells"]

    def test_invalid_values(self):
        config = resolve_config(small_config(outputs=["mask"]))
        with pytest.raises(ConfigError):
            sweep(config, "spacing", [1])
        with pytest.raises(ConfigError):
            sweep(config, "range", [[1.0]])
        with pytest.raises(ConfigError):
            sweep(config, "dimensionality", [3])
        with pytest.raises(ConfigError):
            sweep(config, "bandwidth", [1])

    def test_writes_summary(self, tmp_path):
        config = resolve_config(small_config(outputs=["mask"]))
        sweep(config, "spacing", [4, 8], out_dir=tmp_path / "sw")
        summary = (tmp_path / "sw" / "sweep_summary.csv").read_text()
        assert "N4," in summary and "N8," in summary
        assert (tmp_path / "sw" / "mask_N4.csv").exists()


class TestCli:
    def test_run_command(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(small_config(outputs=["mask"])))
        code = main(["run", str(path), "--out", str(tmp_path / "out")])
        assert code == 0
        assert (tmp_path / "out" / "mask.csv").exists()
        assert "wrote" in capsys.readouterr().out

    def test_run_bad_config_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"wave": ')
        assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 2
        assert "configuration error" in capsys.readouterr().err

    def test_missing_config_exit_code(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "none.json")]) == 2

    def test_sweep_command(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(small_config(outputs=["mask"])))
        code = main(["sweep", str(path), "--param", "spacing", "--values", "[4, 8]",
                     "--out", str(tmp_path / "sw")])
        assert code == 0
        out = capsys.readouterr().out
        assert "N4:" in out and "N8:" in out

    def test_sweep_bad_values_json(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(small_config(outputs=["mask"])))
        assert main(["sweep", str(path), "--param", "spacing", "--values", "[4,"]) == 2
