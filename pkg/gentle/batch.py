"""
Concurrent evaluation of independent input files
"""

import asyncio
import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

from .config import get_settings
from .errors import GentleError

logger = logging.getLogger(__name__)


@dataclass
class BatchResult:
    source: str
    value: Any = None
    error: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.error is None


async def run_batch(sources: Sequence[str], job: Callable[[str], Any],
                    workers: Optional[int] = None) -> List[BatchResult]:
    """Run job on every source in worker threads; results come back in input order"""
    limit = asyncio.Semaphore(workers or get_settings().batch_workers)

    async def run_one(source: str) -> BatchResult:
        async with limit:
            try:
                value = await asyncio.to_thread(job, source)
                return BatchResult(source, value)
            except (GentleError, ValueError, OSError) as e:
                logger.info(f"{source}: {e}")
                return BatchResult(source, error=e)

    return await asyncio.gather(*[run_one(s) for s in sources])
