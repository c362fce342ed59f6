import pytest

import grigtree as gt
from grigtree.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce(capsys):
    assert run(capsys, "reduce", "aabd") == (0, "c\n", "")
    assert run(capsys, "reduce", "abab") == (0, "abab\n", "")
    assert run(capsys, "reduce", "abba") == (0, "-\n", "")
    assert run(capsys, "reduce", "dc") == (0, "b\n", "")
    assert run(capsys, "reduce", "") == (0, "-\n", "")


def test_decompose_single_level(capsys):
    code, out, err = run(capsys, "decompose", "abdabac")
    assert (code, err) == (0, "")
    assert out == "0: cbad  1: aca  sigma: 1\n"


def test_decompose_empty_word(capsys):
    code, out, _ = run(capsys, "decompose", "-")
    assert code == 0
    assert out == "0: -  1: -  sigma: 0\n"


def test_decompose_with_depth(capsys):
    code, out, _ = run(capsys, "decompose", "abdabac", "--depth", "1")
    assert code == 0
    assert out.splitlines() == ["-: abdabac", "0: cbad", "1: aca"]
    code, out, _ = run(capsys, "decompose", "abdabac", "--depth", "2")
    lines = out.splitlines()
    assert lines[0] == "-: abdabac"
    assert [ln.split(":")[0] for ln in lines] == ["-", "0", "1", "00", "01", "10", "11"]


def test_act(capsys):
    assert run(capsys, "act", "word:a", "011") == (0, "111\n", "")
    assert run(capsys, "act", "word:a", "-") == (0, "-\n", "")
    assert run(capsys, "act", "word:-", "0101") == (0, "0101\n", "")


def test_act_odometer_automaton(capsys, tmp_path):
    path = tmp_path / "odometer.txt"
    path.write_text("# binary adding machine\no: 1 e o\ne: 0 e e\n")
    assert run(capsys, "act", f"auto:{path}", "111") == (0, "000\n", "")
    assert run(capsys, "act", f"auto:{path}", "0101") == (0, "1101\n", "")
    assert run(capsys, "act", f"auto:{path}#e", "0101") == (0, "0101\n", "")


def test_portrait_text(capsys):
    code, out, _ = run(capsys, "portrait", "word:d", "--depth", "3")
    assert code == 0
    assert out == "0\n00\n0010\n"


def test_portrait_dot(capsys):
    code, out, _ = run(capsys, "portrait", "word:a", "--depth", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph portrait {")
    assert '"-" [label="- 1"];' in out
    assert '"-" -> "0";' in out
    assert out.rstrip().endswith("}")


def test_portrait_file_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "portrait", "word:dacab", "--depth", "4")
    assert code == 0
    path = tmp_path / "p.txt"
    path.write_text(out)
    for vertex in ("0000", "0101", "1110", "1011"):
        _, via_portrait, _ = run(capsys, "act", f"portrait:{path}", vertex)
        _, via_word, _ = run(capsys, "act", "word:dacab", vertex)
        assert via_portrait == via_word


def test_check_closure_ok(capsys):
    code, out, _ = run(capsys, "check-closure", "word:abab", "--depth", "6")
    assert code == 0
    assert out == "OK depth=6\n"
    code, out, _ = run(capsys, "check-closure", "auto:f", "--depth", "8")
    assert (code, out) == (0, "OK depth=8\n")


def test_check_closure_violation(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0\n00\n0000\n10000000\n")
    code, out, _ = run(capsys, "check-closure", f"portrait:{path}", "--depth", "4")
    assert code == 1
    assert out == "VIOLATION vertex=-\n"


def test_check_closure_depth_too_small(capsys):
    code, out, err = run(capsys, "check-closure", "word:a", "--depth", "3")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--level", "3")
    assert (code, out) == (0, "level=3 count=128\n")
    path = tmp_path / "level3.bin"
    code, out, _ = run(capsys, "enumerate", "--level", "3", "--out", str(path))
    assert code == 0
    cached = gt.load_portrait_set(path)
    assert cached.level == 3 and len(cached) == 128


def test_enumerate_guard_rails(capsys):
    code, _, err = run(capsys, "enumerate", "--level", "5")
    assert code == 2
    assert "--large" in err
    code, _, err = run(capsys, "enumerate", "--level", "0")
    assert code == 2
    assert err.startswith("error:")


def test_hausdorff_table(capsys):
    code, out, _ = run(capsys, "hausdorff", "--max-level", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1\t1\t1\t1\t1.000000"
    assert lines[3] == "4\t12\t15\t4/5\t0.800000"
    code, _, err = run(capsys, "hausdorff", "--max-level", "0")
    assert code == 2 and err.startswith("error:")


def test_sample_is_deterministic(capsys):
    code, out1, _ = run(capsys, "sample", "--seed", "5", "--depth", "4")
    assert code == 0
    lines = out1.splitlines()
    assert lines[0] == "# seed=5 depth=4"
    body = "\n".join(lines[1:]) + "\n"
    assert body == gt.sample_closure_element(5, 4).to_text()
    _, out2, _ = run(capsys, "sample", "--seed", "5", "--depth", "4")
    assert out2 == out1
    code, _, err = run(capsys, "sample", "--seed", "5", "--depth", "3")
    assert code == 2 and err.startswith("error:")


def test_bounded_automaton_verdicts(capsys):
    code, out, _ = run(capsys, "bounded", "auto:grig")
    assert code == 0
    assert out == "profile: 1 0 0 0 0 0 0 0 0\nbounded: yes\n"
    code, out, _ = run(capsys, "bounded", "auto:f", "--levels", "4")
    assert code == 1
    assert out == "profile: 1 2 4 6 14\nbounded: no\n"


def test_bounded_word_element_prints_profile_only(capsys):
    code, out, _ = run(capsys, "bounded", "word:d")
    assert code == 0
    assert out == "profile: 0 0 1 1 0 1 1 0 1\n"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "20", "--max-len", "20",
                       "--seed", "3")
    assert code == 0
    assert out == "seed=3 samples=20 max_len=20 violations=0\n"


@pytest.mark.parametrize("spec", [
    "word:abx",
    "word",
    "nope:x",
    "auto:missing.txt",
    "auto:grig#z",
    "kbar:ab",
])
def test_bad_element_specs_exit_2(capsys, spec):
    code, out, err = run(capsys, "act", spec, "-")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_bad_portrait_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0\n02\n")
    code, _, err = run(capsys, "act", f"portrait:{path}", "-")
    assert code == 2 and err.startswith("error:")


def test_bad_vertex_exits_2(capsys):
    code, _, err = run(capsys, "act", "word:a", "012")
    assert code == 2 and err.startswith("error:")


def test_unknown_subcommand_raises_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])
    with pytest.raises(SystemExit):
        main([])


def test_kbar_designator(capsys):
    code, out, _ = run(capsys, "check-closure", "kbar:abab", "--depth", "8")
    assert (code, out) == (0, "OK depth=8\n")
    code, out, _ = run(capsys, "act", "kbar:-", "0011")
    assert (code, out) == (0, "0011\n")
