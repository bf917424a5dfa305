"""
CSSC-SpMV - SuiteSparse Fetch and Cache

ダウンロードは fetch_matrix の明示呼び出し時のみ。ベンチマークはキャッシュを参照するだけ。
"""

import logging
import shutil
import tarfile
import tempfile
import urllib.request
from pathlib import Path
from typing import Optional, Tuple

from config.settings import settings

logger = logging.getLogger(__name__)


def split_identifier(identifier: str) -> Tuple[str, str]:
    """'HB/arc130' -> ('HB', 'arc130')"""
    parts = identifier.strip("/").split("/")
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"SuiteSparse identifier must look like GROUP/NAME, got {identifier!r}")
    return parts[0], parts[1]


def cached_path(identifier: str, cache_dir: Optional[Path] = None) -> Path:
    group, name = split_identifier(identifier)
    return Path(cache_dir or settings.cache_dir) / group / f"{name}.mtx"


def fetch_matrix(identifier: str, cache_dir: Optional[Path] = None, base_url: Optional[str] = None,
                 force: bool = False) -> Path:
    """tar.gz を取得して .mtx をキャッシュへ展開し、そのパスを返す"""
    target = cached_path(identifier, cache_dir)
    if target.exists() and not force:
        logger.info("Using cached %s at %s", identifier, target)
        return target

    group, name = split_identifier(identifier)
    url = f"{(base_url or settings.suitesparse_url).rstrip('/')}/{group}/{name}.tar.gz"
    target.parent.mkdir(parents=True, exist_ok=True)
    logger.info("Downloading %s", url)

    with tempfile.TemporaryDirectory() as tmp:
        archive = Path(tmp) / f"{name}.tar.gz"
        with urllib.request.urlopen(url, timeout=60) as response, open(archive, "wb") as out:
            shutil.copyfileobj(response, out)

        with tarfile.open(archive, "r:gz") as tar:
            member = next((m for m in tar.getmembers() if m.name.endswith(f"{name}/{name}.mtx")), None)
            if member is None:
                raise FileNotFoundError(f"{name}.mtx not found in {url}")
            source = tar.extractfile(member)
            with open(target, "wb") as out:
                shutil.copyfileobj(source, out)

    logger.info("Cached %s at %s", identifier, target)
    return target
