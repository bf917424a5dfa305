"""
CSSC-SpMV - Main Application Entry Point
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# プロジェクトルートをPythonパスに追加
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from bench import (  # noqa: E402
    ReportGenerator,
    dense_oracle,
    fetch_matrix,
    load_bench_config,
    random_vector,
    run_bench,
    three_chunk_fixture
)
from config import settings, setup_logging  # noqa: E402
from formats import coo_to_csr, csr_to_cssc, read_matrix_market, read_vector, validate_cssc  # noqa: E402
from errors import SpmvError  # noqa: E402
from he.params import HEParams  # noqa: E402
from protocol import MessageLedger, audit_leakage  # noqa: E402
from tools.cost_calculator import CostTable, estimate_time  # noqa: E402
from workflow import SpmvSession, run_spmv_with_error_handling  # noqa: E402

logger = logging.getLogger("spmv")


def _write_json(path: Path, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


def cmd_convert(args) -> int:
    """Matrix Market -> CSSC (JSON)"""
    matrix = coo_to_csr(read_matrix_market(args.input))
    cssc = csr_to_cssc(matrix)
    problems = validate_cssc(cssc)
    if problems:
        print(f"❌ CSSC の検証に失敗しました: {problems}")
        return 1
    out = _write_json(args.out, cssc.to_dict())
    print(f"✅ {args.input} -> {out} ({cssc.rows}x{cssc.cols}, nnz={cssc.nnz}, 整列列={cssc.n_aligned_cols})")
    return 0


def cmd_run(args) -> int:
    """暗号化 SpMV を 1 回実行してレポートを出力"""
    params = HEParams.from_settings(slot_count=args.slots, plaintext_modulus=args.t)
    chunk_size = args.chunk_size or min(settings.chunk_size, params.slot_count)
    matrix = coo_to_csr(read_matrix_market(args.matrix))
    if args.vector:
        vector = read_vector(args.vector)
    else:
        vector = random_vector(matrix.cols, seed=args.random_seed)

    print(f"🚀 SpMV 実行: {matrix.rows}x{matrix.cols}, nnz={matrix.nnz}, slots={params.slot_count}, s={chunk_size}")
    outcome = run_spmv_with_error_handling(matrix, vector, params, chunk_size, args.key_holder)
    if not outcome["success"]:
        return 1

    result = outcome["result"]
    table = CostTable.from_settings()
    audit = audit_leakage(result.message_ledger)
    verified = bool((result.values == dense_oracle(matrix, vector, params.plaintext_modulus)).all())

    print(f"✅ 完了: n_ct={result.n_ct}, 残りノイズバジェット={result.noise_budget_remaining_bits} bits")
    print(f"   演算回数: {result.op_ledger.to_dict()}")
    print(f"   推定時間: {estimate_time(result.op_ledger, table):,.3f} ms")
    print(f"   平文オラクル一致: {'✅' if verified else '❌'} / 漏洩監査: {audit.status}")

    if args.report:
        report = {
            "matrix": str(args.matrix),
            "params": params.model_dump(),
            "chunk_size": chunk_size,
            "key_holder": args.key_holder,
            "result": result.to_dict(),
            "estimated_time_ms": estimate_time(result.op_ledger, table),
            "cloud_cost_ms": estimate_time(result.op_ledger, table, cloud_only=True),
            "verified": verified,
            "audit": audit.model_dump(mode="json"),
        }
        print(f"📊 レポート: {_write_json(args.report, report)}")
    return 0 if verified and audit.passed else 1


def cmd_bench(args) -> int:
    config = load_bench_config(args.config)
    print(f"🔄 ベンチマーク開始: {len(config.matrices)} 行列" + (" + スケーリングスイート" if config.scaling_suite else ""))
    report = run_bench(config)

    generator = ReportGenerator()
    generator.display(report)
    print(f"\n📊 レポート: {generator.write_json(report, args.out)}")
    if args.scaling_csv:
        print(f"📈 スケーリング CSV: {generator.write_scaling_csv(report, args.scaling_csv)}")
    return 0


def cmd_audit(args) -> int:
    """run のレポートから送受信記録を読み直して監査"""
    data = json.loads(Path(args.report).read_text(encoding="utf-8"))
    ledger = MessageLedger.model_validate(data["result"]["transcript"])
    report = audit_leakage(ledger)
    print(f"🔍 監査結果: {report.status} ({report.checked_messages} メッセージ)")
    for violation in report.violations:
        print(f"  ❌ rule ({violation.rule}) message #{violation.message_index}: {violation.description}")
    return 0 if report.passed else 1


def cmd_fetch(args) -> int:
    path = fetch_matrix(args.identifier, cache_dir=args.cache_dir, force=args.force)
    print(f"✅ {args.identifier} -> {path}")
    return 0


def cmd_demo(args) -> int:
    """3 チャンクの固定例をエンドツーエンドで実行"""
    matrix, vector, chunk_size = three_chunk_fixture()
    params = HEParams.from_settings(slot_count=16)
    result = SpmvSession(verbose=True).run([matrix], vector, params, chunk_size, args.key_holder)

    print(f"\n📐 チャンク形状 (r, c): {result.chunk_shapes[0]}")
    print(f"   結果: {result.values.tolist()}")
    print(f"   平文: {(matrix.to_dense() @ vector).tolist()}")
    print(f"   演算回数: {result.op_ledger.to_dict()}")
    print(f"   漏洩監査: {audit_leakage(result.message_ledger).status}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spmv", description="CSSC packed homomorphic sparse matrix-vector multiplication")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="convert a Matrix Market file to a CSSC JSON dump")
    convert.add_argument("--in", dest="input", type=Path, required=True)
    convert.add_argument("--out", type=Path, required=True)
    convert.set_defaults(func=cmd_convert)

    run = sub.add_parser("run", help="run one encrypted SpMV")
    run.add_argument("--matrix", type=Path, required=True)
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--vector", type=Path)
    source.add_argument("--random-seed", type=int)
    run.add_argument("--slots", type=int, default=None)
    run.add_argument("--t", type=int, default=None)
    run.add_argument("--chunk-size", type=int, default=None)
    run.add_argument("--key-holder", choices=["A", "B"], default=settings.key_holder)
    run.add_argument("--report", type=Path)
    run.set_defaults(func=cmd_run)

    bench = sub.add_parser("bench", help="run a benchmark sweep from a TOML config")
    bench.add_argument("--config", type=Path, required=True)
    bench.add_argument("--out", type=Path, default=settings.output_dir / "bench_report.json")
    bench.add_argument("--scaling-csv", type=Path)
    bench.set_defaults(func=cmd_bench)

    audit = sub.add_parser("audit", help="re-run the leakage audit on a run report")
    audit.add_argument("--report", type=Path, required=True)
    audit.set_defaults(func=cmd_audit)

    fetch = sub.add_parser("fetch", help="download a SuiteSparse matrix into the cache")
    fetch.add_argument("identifier", help="GROUP/NAME, e.g. HB/arc130")
    fetch.add_argument("--cache-dir", type=Path)
    fetch.add_argument("--force", action="store_true")
    fetch.set_defaults(func=cmd_fetch)

    demo = sub.add_parser("demo", help="run the three-chunk example end to end")
    demo.add_argument("--key-holder", choices=["A", "B"], default="A")
    demo.set_defaults(func=cmd_demo)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """メインアプリケーション"""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        return args.func(args)
    except SpmvError as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"❌ エラー: {e}")
        return 2
    except (OSError, ValueError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"❌ エラー: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
