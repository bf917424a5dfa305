"""
CSSC-SpMV - LangGraph Workflow Implementation
"""

import logging
import uuid
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, TypedDict

import numpy as np
from langgraph.graph import END, StateGraph

from agents import ClientA, ClientB, CloudServer, KeyHolder
from formats.sparse import CsrMatrix
from he.backend import HEBackend, SimulatorBackend
from errors import DimensionMismatch, SpmvError
from he.ledger import OpLedger
from he.params import HEParams
from protocol.result import SpmvResult
from protocol.transcript import MessageLedger, PartyRole
from tools.chunker import ChunkSet, partition_rows

logger = logging.getLogger(__name__)


class SpmvState(TypedDict, total=False):
    """三者プロトコルの状態定義"""
    # 入力データ
    slices: List[CsrMatrix]
    vector: np.ndarray
    chunk_size: int

    # 実行環境
    backend: HEBackend
    transcript: MessageLedger

    # パーティ処理結果
    chunk_sets: List[ChunkSet]
    ct_values: List[list]
    ct_vectors: List[list]
    ct_results: List[Any]

    # 最終出力
    values: np.ndarray
    noise_remaining: int


class SpmvWorkflow:
    """SpMV ワークフロー管理クラス"""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self.client_a = ClientA()
        self.client_b = ClientB()
        self.cloud = CloudServer()
        self.key_holder = KeyHolder()

        # ワークフローの構築
        self.workflow = self._create_workflow()

    def _create_workflow(self) -> StateGraph:
        """LangGraphワークフローの作成"""
        workflow = StateGraph(SpmvState)

        # ノード追加
        workflow.add_node("client_a", self._client_a_node)
        workflow.add_node("client_b", self._client_b_node)
        workflow.add_node("cloud", self._cloud_node)
        workflow.add_node("key_holder", self._key_holder_node)

        # エントリーポイント
        workflow.set_entry_point("client_a")

        # 条件分岐: 非ゼロ要素がなければ暗号計算を省略
        workflow.add_conditional_edges(
            "client_a",
            self._has_chunks,
            {
                "encrypted": "client_b",
                "empty": "key_holder"
            }
        )
        workflow.add_edge("client_b", "cloud")
        workflow.add_edge("cloud", "key_holder")
        workflow.add_edge("key_holder", END)

        return workflow

    def _announce(self, message: str) -> None:
        logger.debug(message)
        if self.verbose:
            print(message)

    def _client_a_node(self, state: SpmvState) -> SpmvState:
        """Client A ノード"""
        self._announce("🔐 Client A: 行列を CSSC チャンクに変換して暗号化中...")
        return self.client_a.process(state)

    def _client_b_node(self, state: SpmvState) -> SpmvState:
        """Client B ノード"""
        self._announce("🔐 Client B: ベクトルを再配置して暗号化中...")
        return self.client_b.process(state)

    def _cloud_node(self, state: SpmvState) -> SpmvState:
        """Cloud ノード"""
        self._announce("☁️ Cloud: 暗号文の乗算と集約を実行中...")
        return self.cloud.process(state)

    def _key_holder_node(self, state: SpmvState) -> SpmvState:
        """復号ノード"""
        self._announce("🔓 鍵保持者: 結果を復号して行順を復元中...")
        return self.key_holder.process(state)

    def _has_chunks(self, state: SpmvState) -> str:
        if any(chunk_set.n_ct for chunk_set in state["chunk_sets"]):
            return "encrypted"
        return "empty"

    def compile(self):
        """ワークフローのコンパイル"""
        return self.workflow.compile()


class SpmvSession:
    """SpMV セッション管理"""

    def __init__(self, session_id: Optional[str] = None, verbose: bool = False):
        self.session_id = session_id or str(uuid.uuid4())
        self.workflow = SpmvWorkflow(verbose=verbose)
        self.compiled_workflow = self.workflow.compile()

    def run(
        self, slices: Sequence[CsrMatrix], vector: np.ndarray, params: HEParams,
        chunk_size: int, key_holder: str = "A"
    ) -> SpmvResult:
        backend = SimulatorBackend(params)
        transcript = MessageLedger(key_holder=PartyRole.key_holder(key_holder))
        initial_state = {
            "slices": list(slices),
            "vector": vector,
            "chunk_size": chunk_size,
            "backend": backend,
            "transcript": transcript,
        }

        final = self.compiled_workflow.invoke(initial_state)

        chunk_shapes = [list(zip(cs.r_list, cs.c_list)) for cs in final["chunk_sets"]]
        return SpmvResult(
            values=final["values"],
            op_ledger=backend.ledger,
            message_ledger=transcript,
            n_ct=sum(len(shapes) for shapes in chunk_shapes),
            noise_budget_remaining_bits=final["noise_remaining"],
            chunk_shapes=chunk_shapes,
        )


@lru_cache(maxsize=1)
def _default_session() -> SpmvSession:
    return SpmvSession(session_id="default")


def _check_inputs(matrix: CsrMatrix, vector, params: HEParams, s: int) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.int64).ravel()
    if matrix.cols != vector.size:
        raise DimensionMismatch(f"matrix has {matrix.cols} columns but vector has length {vector.size}")
    if not 1 <= s <= params.slot_count:
        raise ValueError(f"chunk size {s} must be between 1 and slot_count {params.slot_count}")
    return vector


def spmv(
    matrix: CsrMatrix, vector, params: HEParams, s: int,
    key_holder: str = "A", session: Optional[SpmvSession] = None
) -> SpmvResult:
    """暗号化 SpMV（行分割なし）"""
    vector = _check_inputs(matrix, vector, params, s)
    result = (session or _default_session()).run([matrix], vector, params, s, key_holder)
    logger.info(
        "spmv %dx%d nnz=%d: n_ct=%d, noise remaining %d bits",
        matrix.rows, matrix.cols, matrix.nnz, result.n_ct, result.noise_budget_remaining_bits,
    )
    return result


def _merge_results(results: Sequence[SpmvResult], key_holder: str) -> SpmvResult:
    op_ledger = OpLedger()
    transcript = MessageLedger(key_holder=PartyRole.key_holder(key_holder))
    for index, result in enumerate(results):
        op_ledger = op_ledger.merge(result.op_ledger)
        for message in result.message_ledger.messages:
            transcript.messages.append(message.model_copy(update={"slice_index": index}))
    return SpmvResult(
        values=np.concatenate([r.values for r in results]) if results else np.zeros(0, dtype=np.int64),
        op_ledger=op_ledger,
        message_ledger=transcript,
        n_ct=sum(r.n_ct for r in results),
        noise_budget_remaining_bits=min(r.noise_budget_remaining_bits for r in results),
        chunk_shapes=[shapes for r in results for shapes in r.chunk_shapes],
    )


def spmv_partitioned(
    matrix: CsrMatrix, vector, params: HEParams, s: int,
    key_holder: str = "A", max_workers: int = 1
) -> SpmvResult:
    """s 行ごとのスライスに分割して SpMV を行い、元の行順に積み上げる

    max_workers > 1 ではスライスを並列に処理し、各スライスの台帳を
    スライス順にマージする（合計値は逐次実行と一致）。
    """
    vector = _check_inputs(matrix, vector, params, s)
    slices = partition_rows(matrix, s)

    if max_workers <= 1 or len(slices) == 1:
        result = _default_session().run(slices, vector, params, s, key_holder)
    else:
        def run_slice(piece: CsrMatrix) -> SpmvResult:
            return SpmvSession().run([piece], vector, params, s, key_holder)

        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            result = _merge_results(list(executor.map(run_slice, slices)), key_holder)

    logger.info(
        "spmv_partitioned %dx%d nnz=%d: %d slices, n_ct=%d",
        matrix.rows, matrix.cols, matrix.nnz, len(slices), result.n_ct,
    )
    return result


# エラーハンドリング付きワークフロー実行
def run_spmv_with_error_handling(
    matrix: CsrMatrix, vector, params: HEParams, s: int, key_holder: str = "A"
) -> Dict[str, Any]:
    """エラーハンドリング付きの SpMV 実行"""
    try:
        return {"success": True, "result": spmv_partitioned(matrix, vector, params, s, key_holder)}

    except SpmvError as e:
        print(f"⚠️ 処理中にエラーが発生しました: {str(e)}")
        return {"success": False, "error": str(e)}

    except Exception as e:
        logger.exception("Unexpected failure in SpMV pipeline")
        print(f"❌ システムエラーが発生しました: {str(e)}")
        return {"success": False, "error": str(e)}


# 使用例
if __name__ == "__main__":
    example = CsrMatrix.from_dense([[1, 2], [3, 4]])
    outcome = run_spmv_with_error_handling(example, [5, 6], HEParams(slot_count=16), 4)

    if outcome["success"]:
        print(f"結果: {outcome['result'].values.tolist()}")
    else:
        print(f"SpMV に失敗しました: {outcome['error']}")
