"""
CSSC-SpMV - Transcript and leakage audit tests
"""

import pytest

from bench.synthetic import three_chunk_fixture
from he import HEParams
from protocol import MessageKind, MessageLedger, PartyRole, audit_leakage
from protocol.transcript import INT_BYTES, SHAPE_HEADER_BYTES
from workflow import spmv


@pytest.fixture
def standard_transcript():
    matrix, vector, s = three_chunk_fixture()
    return spmv(matrix, vector, HEParams(slot_count=16), s).message_ledger


def test_standard_run_passes(standard_transcript):
    report = audit_leakage(standard_transcript)
    assert report.passed
    assert report.status == "PASS"
    assert report.checked_messages == len(standard_transcript.messages)


def test_plaintext_values_to_cloud_fails(standard_transcript):
    standard_transcript.send_plain(PartyRole.CLIENT_A, PartyRole.CLOUD, MessageKind.PLAINTEXT_VALUES, n_ints=10)
    injected = len(standard_transcript.messages) - 1

    report = audit_leakage(standard_transcript)
    assert report.status == "FAIL"
    assert {v.rule for v in report.violations} == {"a", "c"}
    assert all(v.message_index == injected for v in report.violations)
    assert "PlaintextValues ClientA->Cloud" in report.violations[0].description


def test_column_indices_to_cloud_fails(standard_transcript):
    standard_transcript.send_plain(PartyRole.CLIENT_A, PartyRole.CLOUD, MessageKind.COLUMN_INDEX_PLAIN, n_ints=36)
    report = audit_leakage(standard_transcript)
    assert not report.passed
    assert "b" in {v.rule for v in report.violations}


def test_row_map_only_from_a_to_b():
    ledger = MessageLedger(key_holder=PartyRole.CLIENT_B)
    ledger.send_plain(PartyRole.CLIENT_A, PartyRole.CLIENT_B, MessageKind.ROW_MAP_PLAIN, n_ints=4)
    assert audit_leakage(ledger).passed

    ledger.send_plain(PartyRole.CLIENT_B, PartyRole.CLIENT_A, MessageKind.ROW_MAP_PLAIN, n_ints=4)
    report = audit_leakage(ledger)
    assert [(v.rule, v.message_index) for v in report.violations] == [("b", 1)]


def test_decrypted_values_only_to_key_holder():
    ledger = MessageLedger(key_holder=PartyRole.CLIENT_A)
    ledger.send_plain(PartyRole.CLIENT_B, PartyRole.CLIENT_A, MessageKind.PLAINTEXT_VALUES, n_ints=3)
    assert audit_leakage(ledger).passed

    ledger.send_plain(PartyRole.CLIENT_A, PartyRole.CLIENT_B, MessageKind.PLAINTEXT_VALUES, n_ints=3)
    assert [v.rule for v in audit_leakage(ledger).violations] == ["c"]


def test_message_sizes():
    params = HEParams()
    ledger = MessageLedger()
    batch = ledger.send_ciphertexts(PartyRole.CLIENT_A, PartyRole.CLOUD, 2, params)
    meta = ledger.send_plain(PartyRole.CLIENT_A, PartyRole.CLIENT_B, MessageKind.COLUMN_INDEX_PLAIN, n_ints=5, n_shapes=2)

    assert batch.payload_bytes == 2 * params.ciphertext_bytes == 2 * round(0.52 * 2 ** 20)
    assert batch.ciphertext_count == 2
    assert meta.payload_bytes == 5 * INT_BYTES + 2 * SHAPE_HEADER_BYTES
    assert meta.ciphertext_count == 0
    assert ledger.totals_by_direction() == {
        "ClientA->Cloud": batch.payload_bytes,
        "ClientA->ClientB": meta.payload_bytes,
    }


def test_transcript_json_round_trip(standard_transcript):
    restored = MessageLedger.model_validate(standard_transcript.model_dump(mode="json"))
    assert restored.messages == standard_transcript.messages
    assert audit_leakage(restored).passed


def test_key_holder_label():
    assert PartyRole.key_holder("a") == PartyRole.CLIENT_A
    assert PartyRole.key_holder("B") == PartyRole.CLIENT_B
    with pytest.raises(KeyError):
        PartyRole.key_holder("C")
