import json

import pytest

from sbqa.instances import gen_complete_instance, gen_heavyhex_hubo
from sbqa.models import HuboModel, IsingModel, hubo_energy, ising_energy
from sbqa.serialization import ParseError, dumps_instance, load_instance, save_instance


class TestTextFormat:
    def test_two_spin_ferromagnet(self, tmp_path):
        p = tmp_path / "ferro.txt"
        p.write_text("ising 2\nc 0 1 1.0\n")
        loaded = load_instance(p)
        assert isinstance(loaded.model, IsingModel)
        assert loaded.model.n == 2
        assert ising_energy(loaded.model, [1, 1]) == -1.0

    def test_reference_energy_directive(self, tmp_path):
        p = tmp_path / "ref.txt"
        p.write_text("# reference_energy -1.0\nising 2\nc 0 1 1.0\n")
        loaded = load_instance(p)
        assert loaded.reference_energy == -1.0

    def test_offset_directive_and_fields(self, tmp_path):
        p = tmp_path / "off.txt"
        p.write_text("ising 2\n# offset 0.5\nf 0 0.25\nc 0 1 1.0\n")
        loaded = load_instance(p)
        assert loaded.model.offset == 0.5
        assert loaded.model.fields[0] == 0.25

    def test_hubo_terms(self, tmp_path):
        p = tmp_path / "h.txt"
        p.write_text("hubo 3\nc 0 1 0.5\nt 0 1 2 -1.0\n")
        loaded = load_instance(p)
        assert isinstance(loaded.model, HuboModel)
        assert hubo_energy(loaded.model, [1, 1, 1]) == -0.5

    def test_parse_error_has_line_number(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("ising 2\nc 0 1 notanumber\n")
        with pytest.raises(ParseError, match="line 2"):
            load_instance(p)

    def test_unknown_record(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("ising 2\nq 0 1 1.0\n")
        with pytest.raises(ParseError, match="line 2"):
            load_instance(p)

    def test_missing_header(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("c 0 1 1.0\n")
        with pytest.raises(ParseError, match="header"):
            load_instance(p)

    def test_roundtrip_identity_ising(self, tmp_path):
        m = gen_complete_instance(7, seed=11)
        p = tmp_path / "inst.txt"
        save_instance(m, p, reference_energy=-3.25)
        loaded = load_instance(p)
        assert loaded.reference_energy == -3.25
        back = loaded.model
        assert back.n == m.n
        assert back.couplings() == m.couplings()
        assert (back.fields == m.fields).all()
        assert dumps_instance(back, -3.25) == dumps_instance(m, -3.25)

    def test_roundtrip_identity_hubo(self, tmp_path):
        m = gen_heavyhex_hubo(0, seed=4)
        p = tmp_path / "hubo.txt"
        save_instance(m, p)
        back = load_instance(p).model
        assert isinstance(back, HuboModel)
        assert back.terms == m.terms


class TestJsonMirror:
    def test_ising_json(self, tmp_path):
        p = tmp_path / "inst.json"
        p.write_text(json.dumps({
            "kind": "ising", "n": 2,
            "couplings": [[0, 1, 1.0]], "fields": [0.0, 0.0],
            "offset": 0.0, "reference_energy": -1.0,
        }))
        loaded = load_instance(p)
        assert loaded.reference_energy == -1.0
        assert ising_energy(loaded.model, [1, 1]) == -1.0

    def test_hubo_json(self, tmp_path):
        p = tmp_path / "inst.json"
        p.write_text(json.dumps({
            "kind": "hubo", "n": 3,
            "couplings": [[0, 1, 0.5]],
            "terms": [[[0, 1, 2], -1.0]],
        }))
        m = load_instance(p).model
        assert isinstance(m, HuboModel)
        assert len(m.terms) == 2

    def test_adapter_infers_kind_and_n(self, tmp_path):
        p = tmp_path / "loose.json"
        p.write_text(json.dumps({"J": [[0, 1, 1.0], [1, 2, -1.0]]}))
        m = load_instance(p).model
        assert isinstance(m, IsingModel)
        assert m.n == 3
