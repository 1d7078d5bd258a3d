import json

import pytest

from girthgeom.cli import EXIT_BUDGET, EXIT_CHECK_FAILED, EXIT_OK, EXIT_REFUSED, main


def read(path):
    return json.loads(path.read_text())


class TestBuild:
    def test_boxes_pigeonhole(self, tmp_path, capsys):
        out = tmp_path / "c9"
        code = main(["build", "boxes", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(out)])
        assert code == EXIT_OK
        report = read(tmp_path / "c9.report.json")
        assert report["status"] == "ok"
        assert report["results"]["girth"]["computed"] == 9
        assert report["results"]["chromatic"]["exact"] == 3
        scene = read(tmp_path / "c9.scene.json")
        assert scene["kind"] == "grounded-box-family"
        assert len(scene["boxes"]) == 9
        dimacs = (tmp_path / "c9.dimacs").read_text()
        assert dimacs.startswith("p edge 9 9")
        labels = read(tmp_path / "c9.labels.json")
        assert len(labels["labels"]) == 9

    def test_lines_pigeonhole(self, tmp_path):
        out = tmp_path / "l9"
        code = main(["build", "lines", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(out)])
        assert code == EXIT_OK
        report = read(tmp_path / "l9.report.json")
        assert report["results"]["girth"]["computed"] == 9
        assert report["results"]["chromatic"]["exact"] == 3

    def test_shift(self, tmp_path):
        out = tmp_path / "g5"
        code = main(["build", "shift", "--n", "5", "--seed", "1", "--out", str(out)])
        assert code == EXIT_OK
        report = read(tmp_path / "g5.report.json")
        assert report["results"]["girth"]["computed"] == "infinity"
        assert report["results"]["chromatic"]["exact"] == 2
        checks = {c["name"]: c["ok"] for c in report["results"]["structure"]}
        assert checks["graph-equals-double-shift"]

    def test_determinism(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["build", "boxes", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(a)])
        main(["build", "boxes", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(b)])
        for suffix in (".scene.json", ".dimacs", ".labels.json", ".report.json"):
            assert (tmp_path / ("a" + suffix)).read_bytes() == (tmp_path / ("b" + suffix)).read_bytes()

    def test_provider_refusal_exit_code(self, tmp_path):
        code = main(
            ["build", "boxes", "--g", "9", "--k", "3", "--provider", "pigeonhole", "--out", str(tmp_path / "x")]
        )
        assert code == EXIT_REFUSED

    def test_uncertified_target_is_inconclusive(self, tmp_path):
        # a budget-gated certificate cannot certify the requested lift:
        # the family is still written, but the run is not "ok"
        code = main(
            ["build", "boxes", "--g", "4", "--k", "4", "--provider", "vdw",
             "--vdw-hint", "30", "--budget", "25", "--out", str(tmp_path / "f")]
        )
        assert code == EXIT_BUDGET
        report = read(tmp_path / "f.report.json")
        assert report["status"] == "budget-exhausted"
        assert report["results"]["chromatic"]["claimed_at_least"] == 3  # not the requested 4
        assert (tmp_path / "f.scene.json").exists()


class TestVerify:
    @pytest.fixture
    def scene(self, tmp_path):
        out = tmp_path / "c9"
        main(["build", "boxes", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(out)])
        return tmp_path / "c9.scene.json"

    def test_built_scene_verifies(self, scene, capsys):
        assert main(["verify", str(scene)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "status: ok" in out

    def test_corrupted_scene_fails_with_pair(self, scene, tmp_path, capsys):
        doc = json.loads(scene.read_text())
        doc["boxes"][2] = {"x": ["2", "3"], "y": ["1", "2"], "z": ["0", "1"]}
        bad = tmp_path / "bad.scene.json"
        bad.write_text(json.dumps(doc))
        assert main(["verify", str(bad)]) == EXIT_CHECK_FAILED
        out = capsys.readouterr().out
        report = json.loads(out.rsplit("status:", 1)[0])
        failing = [c for c in report["results"]["structure"] if not c["ok"]]
        assert failing
        assert "pair" in failing[0]["detail"]

    def test_tiny_chroma_budget_inconclusive(self, scene, capsys):
        code = main(["verify", str(scene), "--chroma-budget", "1"])
        assert code == EXIT_BUDGET
        report = json.loads(capsys.readouterr().out.rsplit("status:", 1)[0])
        assert report["results"]["girth"]["ok"] is True  # girth still exact
        assert report["results"]["chromatic"]["refuted_below"] is None

    def test_selected_checks_only(self, scene, capsys):
        assert main(["verify", str(scene), "--checks", "girth"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out.rsplit("status:", 1)[0])
        assert "structure" not in report["results"]
        assert "chromatic" not in report["results"]

    def test_shift_scene_verifies(self, tmp_path):
        out = tmp_path / "g6"
        main(["build", "shift", "--n", "6", "--seed", "2", "--out", str(out)])
        assert main(["verify", str(tmp_path / "g6.scene.json")]) == EXIT_OK

    def test_line_scene_verifies(self, tmp_path):
        out = tmp_path / "l9"
        main(["build", "lines", "--g", "6", "--k", "3", "--provider", "pigeonhole", "--out", str(out)])
        assert main(["verify", str(tmp_path / "l9.scene.json")]) == EXIT_OK


class TestGallai:
    def test_make_writes_certificate(self, tmp_path):
        cert_path = tmp_path / "cert.json"
        code = main(["gallai", "make", "--T", "0,1,2", "--k", "2", "--g", "4", "--out", str(cert_path)])
        assert code == EXIT_OK
        doc = read(cert_path)
        assert len(doc["elements"]) == 9
        assert doc["flags"]["coloring_ok"] is True

    def test_check_roundtrip(self, tmp_path):
        cert_path = tmp_path / "cert.json"
        main(["gallai", "make", "--T", "0,1", "--k", "2", "--g", "6", "--out", str(cert_path)])
        assert main(["gallai", "check", str(cert_path)]) == EXIT_OK

    def test_check_detects_deleted_copy(self, tmp_path, capsys):
        cert_path = tmp_path / "cert.json"
        main(["gallai", "make", "--T", "0,1,2", "--k", "2", "--g", "4", "--out", str(cert_path)])
        capsys.readouterr()
        doc = read(cert_path)
        doc["copies"] = doc["copies"][:-1]
        cert_path.write_text(json.dumps(doc))
        assert main(["gallai", "check", str(cert_path)]) == EXIT_CHECK_FAILED
        report = json.loads(capsys.readouterr().out.rsplit("status:", 1)[0])
        assert report["results"]["copies_complete"] is False

    def test_search_budget_failure_shape(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["gallai", "search", "--T", "0,1,2", "--k", "2", "--g", "9", "--budget", "small", "--out", str(out)]
        )
        assert code == EXIT_BUDGET
        report = read(out)
        assert report["status"] == "budget-exhausted"
        assert report["results"]["found"] is False
        assert report["results"]["nodes"] > report["results"]["limit"]

    def test_search_success_verifies(self, tmp_path):
        out = tmp_path / "cert.json"
        code = main(["gallai", "search", "--T", "0,1,2", "--k", "2", "--g", "4", "--out", str(out)])
        assert code == EXIT_OK
        from girthgeom.gallai import verify_certificate
        from girthgeom.scenes import load_certificate

        cert = load_certificate(out)
        assert verify_certificate(cert).all_ok()

    def test_make_refusal_exit(self, tmp_path):
        code = main(["gallai", "make", "--T", "0,1", "--k", "2", "--g", "9", "--out", str(tmp_path / "c.json")])
        assert code == EXIT_REFUSED
