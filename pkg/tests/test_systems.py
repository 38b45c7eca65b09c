import pytest

from monvar.systems import (
    FamilySpec,
    Identity,
    IdentitySyntaxError,
    IdentitySystem,
    dual_identity,
    dual_system,
    family,
    parse_identity,
    parse_system,
)
from monvar.words import parse_word


def test_parse_identity():
    i = parse_identity("x^2y = x^2yx")
    assert i.lhs == parse_word("x^2y") and i.rhs == parse_word("x^2yx")
    assert str(i) == "x^2y = x^2yx"
    assert parse_identity("x = ").rhs == ()
    with pytest.raises(IdentitySyntaxError):
        parse_identity("xy")
    with pytest.raises(IdentitySyntaxError):
        parse_identity("x = y = z")


def test_trivial_and_dual():
    assert parse_identity("xy = xy").is_trivial
    assert not parse_identity("xy = yx").is_trivial
    assert dual_identity(parse_identity("x^2y = x^2yx")) == parse_identity("yx^2 = xyx^2")


def test_family_instances():
    assert str(family("alpha", 1)) == "xyt1xt2y = yxt1xt2y"
    assert str(family("alpha", 2)) == "xyt1xt2yt3x = yxt1xt2yt3x"
    assert str(family("beta", 1)) == "yx^2t2y = xyxt2y"
    assert str(family("gamma", 1)) == "x^2yt1xt2y = xyxt1xt2y"
    assert str(family("gamma_prime", 1)) == "x^2yt2y = xyxt2y"
    assert str(family("delta", 1, 2)) == "xyt1x^2t2y^2 = yxt1x^2t2y^2"
    assert str(family("kappa", 1, 0)) == "t0xt1x = t0x^2t1x"
    assert str(family("kappa", 2, 1)) == "t0xt1xt2x = t0xt1x^2t2x"
    p = family("perm", 2, (2, 1))
    assert str(p) == "xbaxt1at2b = x^2bat1at2b"


def test_family_bad_params():
    with pytest.raises(ValueError):
        family("alpha", 0)
    with pytest.raises(ValueError):
        family("kappa", 1, 2)
    with pytest.raises(ValueError):
        family("perm", 2, (1, 1))
    with pytest.raises(ValueError):
        family("nope", 1)


def test_family_spec_enumeration():
    ks = FamilySpec("kappa", (1, 2))
    insts = list(ks.instances())
    assert ("kappa", 1, 0) in insts and ("kappa", 2, 2) in insts
    assert len(insts) == 2 + 3
    ps = FamilySpec("perm", (1, 2))
    assert len(list(ps.instances())) == 1 + 2


def test_system_contains_and_dual():
    sys = IdentitySystem(
        fixed=(parse_identity("xyx = xyx^2"),),
        families=(FamilySpec("alpha", (1, 2)),),
    )
    assert sys.contains(parse_identity("xyx = xyx^2"))
    assert sys.contains(parse_identity("xyx^2 = xyx"))  # orientation-insensitive
    assert sys.contains(family("alpha", 2))
    assert not sys.contains(family("alpha", 3))
    d = dual_system(sys)
    assert d.contains(parse_identity("xyx = x^2yx"))
    assert d.contains(family("alpha", 1).reversed())
    assert dual_system(d).contains(parse_identity("xyx = xyx^2"))


def test_parse_system_text():
    text = """
    # comment
    xyx = xyx^2
    x^2y^2 = y^2x^2   # inline comment
    family kappa n=1..2
    family delta k=1..2 n=2
    """
    sys = parse_system(text)
    assert len(sys.fixed) == 2
    assert len(sys.families) == 2
    labels = [l for l, _ in sys.labelled_identities()]
    assert "kappa(1, 0)" in labels
    assert "delta(2, 2)" in labels
