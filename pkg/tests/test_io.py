import numpy as np
import pytest

from madcap.channel import superop_equal
from madcap.io import ChannelFormatError, dumps_channel, fmt, load_channel, loads_channel, save_channel, write_csv
from madcap.madfamily import DecayParams, mad_channel
from conftest import random_channel


def test_round_trip(tmp_path, rng):
    ch = random_channel(rng, 3, 2, 4)
    path = tmp_path / "ch.txt"
    save_channel(ch, path)
    back = load_channel(path, check=True)
    assert len(back) == 4
    assert max(np.abs(a - b).max() for a, b in zip(ch.kraus, back.kraus)) == 0


def test_round_trip_family():
    ch = mad_channel(DecayParams(0.5, 0.4, 0.3))
    assert superop_equal(loads_channel(dumps_channel(ch)), ch) == 0


def test_comments_and_blank_lines():
    text = "# header comment\nkraus_channel v1\n\ndim_in 1\ndim_out 1\ncount 1  # one op\nkraus 0\n1.0,0.0\n"
    ch = loads_channel(text, check=True)
    assert ch.kraus[0][0, 0] == 1


@pytest.mark.parametrize("text", [
    "",
    "kraus_channel v2\n",
    "kraus_channel v1\ndim_in 1\n",
    "kraus_channel v1\ndim_in x\ndim_out 1\ncount 1\n",
    "kraus_channel v1\ndim_in 1\ndim_out 1\ncount 1\nkraus 1\n1,0\n",
    "kraus_channel v1\ndim_in 2\ndim_out 1\ncount 1\nkraus 0\n1,0\n",
    "kraus_channel v1\ndim_in 1\ndim_out 1\ncount 1\nkraus 0\n1;0\n",
    "kraus_channel v1\ndim_in 1\ndim_out 1\ncount 1\nkraus 0\n1,0\nextra\n",
])
def test_malformed(text):
    with pytest.raises(ChannelFormatError):
        loads_channel(text)


def test_fmt():
    assert fmt(1 / 3) == "0.333333333"
    assert fmt(3.0) == "3" and fmt(None) == ""


def test_write_csv(tmp_path, capsys):
    path = tmp_path / "out.csv"
    write_csv(path, ["a", "b"], [["1", "2"]])
    assert path.read_text() == "a,b\n1,2\n"
    write_csv("-", ["a"], [["x"]])
    assert capsys.readouterr().out == "a\nx\n"
