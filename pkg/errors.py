"""
CSSC-SpMV - Error Types
"""

from typing import Optional


class SpmvError(Exception):
    """CSSC-SpMV の基底例外"""


class OverLength(SpmvError, ValueError):
    """平文がスロット数を超える"""


class NoiseExhausted(SpmvError):
    """ノイズバジェット枯渇（復号失敗）"""


class ColumnTooTall(SpmvError):
    """整列列の高さがチャンクサイズを超える"""


class IndexOutOfRange(SpmvError, ValueError):
    """列インデックスがベクトル長の範囲外"""


class DimensionMismatch(SpmvError, ValueError):
    """行列とベクトルの次元不一致"""


class NonSquare(SpmvError, ValueError):
    """正方行列が必要"""


class DuplicateEntry(SpmvError):
    """COO に重複座標が存在する"""


class UnsupportedFormat(SpmvError):
    """未対応の Matrix Market 形式"""


class ParseError(SpmvError):
    """Matrix Market / ベクトルファイルの解析エラー"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
