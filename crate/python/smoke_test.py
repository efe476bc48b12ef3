"""Build the extension module and exercise it from Python.

Usage: python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module(dest: pathlib.Path) -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "vgroupoid-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    shutil.copy(ROOT / "target" / "release" / "libvgroupoid_py.so", dest / "vgroupoid_py.so")


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        build_module(pathlib.Path(tmp))
        sys.path.insert(0, tmp)
        import vgroupoid_py as vg

        assert [vg.sg_cardinality(n) for n in range(1, 7)] == [
            (1, 1), (4, 3), (15, 7), (64, 15), (325, 31), (1956, 63)
        ]
        kinds = [syntax.split("(")[0] for syntax, _ in vg.catalog()]
        assert kinds == ["single_unit", "null", "pair", "vpq", "v3", "tvg", "product", "whitney", "sg"], kinds

        golden = (ROOT / "crates" / "core" / "tests" / "data" / "golden.gd").read_text()
        report = json.loads(vg.verify(golden))
        assert report["status"] == "pass" and len(report["directives"]) == 19
        assert vg.verify(golden) == vg.verify(golden)

        broken = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism M : G -> G = table{ (0,0)->(0,0), (0,1)->(1,1), (1,0)->(1,0), (1,1)->(0,1) }\n"
            "check M homomorphism\n"
        )
        failed = json.loads(vg.verify(broken, witness_cap=1))
        assert failed["status"] == "fail"
        assert all(len([w for w in failed["directives"][0]["witnesses"] if w["law"] == law]) <= 1
                   for law in {w["law"] for w in failed["directives"][0]["witnesses"]})

        try:
            vg.verify("field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=2)\n")
        except ValueError as e:
            assert str(e).startswith("3:") and "NotInverse" in str(e), e
        else:
            raise AssertionError("invalid vpq accepted")
        assert vg.diagnostics("field F = Zp(4)")[0][:3] == (1, 14, "NotPrime")

        print(f"vgroupoid_py {vg.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
