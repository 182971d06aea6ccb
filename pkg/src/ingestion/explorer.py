"""
Block Explorer Client

Etherscan-compatible account transaction lists (module=account,
action=txlist) with:
- an explicit network switch (off by default)
- token-bucket rate limiting (default 5 requests/second)
- retry with exponential backoff on transport errors and rate limits
- a disk cache keyed by address, fronted by an in-memory LRU

Usage:
    with EtherscanClient(NetworkConfig(enabled=True), api_key=key) as client:
        records = client.fetch_account_transactions("0x...")
"""

import json
import logging
import time
from collections.abc import Callable, Iterable
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any

import httpx
from cachetools import LRUCache
from pydantic import ValidationError

from src.errors import FetchError, NetworkDisabledError, PayloadFormatError
from src.ingestion.schemas import AccountQuery, TransactionRecord
from src.schemas.base import WEI_PER_ETHER
from src.schemas.config import NetworkConfig
from src.utils.validation import validate_schema

logger = logging.getLogger(__name__)

API_KEY_ENV = "ETHERSCAN_API_KEY"
MAX_EXCERPT = 200


def account_address(address: str) -> str:
    """Lowercased address; raises SchemaValidationError unless it is 0x plus 40 hex digits."""
    return validate_schema(AccountQuery, {"address": address}).address


class TokenBucket:
    """
    Token bucket rate limiter.

    Clock and sleep are injectable so tests run without waiting.
    """

    def __init__(
        self,
        rate: float,
        capacity: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.rate = rate
        self.capacity = capacity
        self.tokens = capacity
        self._clock = clock
        self._sleep = sleep
        self.last_update = clock()

    def acquire(self, tokens: float = 1.0) -> None:
        """Block until enough tokens are available."""
        while True:
            now = self._clock()
            self.tokens = min(self.capacity, self.tokens + (now - self.last_update) * self.rate)
            self.last_update = now
            if self.tokens >= tokens:
                self.tokens -= tokens
                return
            self._sleep((tokens - self.tokens) / self.rate)


class EtherscanClient:
    """Rate-limited, cached, retrying txlist client."""

    def __init__(
        self,
        config: NetworkConfig,
        api_key: str | None = None,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
    ) -> None:
        self.config = config
        self._api_key = api_key
        self._sleep = sleep
        self._bucket = TokenBucket(
            rate=config.requests_per_second,
            capacity=max(1.0, config.requests_per_second),
            clock=clock,
            sleep=sleep,
        )
        self._http = httpx.Client(timeout=config.timeout_s, transport=transport)
        self._memory: LRUCache[str, list[TransactionRecord]] = LRUCache(maxsize=4096)
        self.requests_made = 0

    def __enter__(self) -> "EtherscanClient":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def close(self) -> None:
        self._http.close()

    # -------------------------------------------------------------------------
    # Fetching
    # -------------------------------------------------------------------------

    def fetch_account_transactions(self, address: str) -> list[TransactionRecord]:
        """
        Every transaction of address in timestamp order.

        Raises:
            NetworkDisabledError: config.enabled is false and nothing is cached
            FetchError: transport failures outlasted the retries
            PayloadFormatError: the explorer answered with an unexpected payload
            SchemaValidationError: address is not 0x followed by 40 hex digits
        """
        address = account_address(address)
        cached = self._cached(address)
        if cached is not None:
            return cached
        if not self.config.enabled:
            raise NetworkDisabledError()

        records: list[TransactionRecord] = []
        page = 1
        while True:
            items = self._request_page(address, page)
            records.extend(self._normalise(address, items))
            if len(items) < self.config.page_size:
                break
            page += 1

        records.sort(key=lambda r: (r.timestamp, r.tx_hash or ""))
        self._store(address, records)
        logger.info("Fetched %d transactions for %s in %d pages", len(records), address, page)
        return records

    def crawl_neighborhood(
        self, centers: Iterable[str], k_in: int = 1, k_out: int = 3
    ) -> list[TransactionRecord]:
        """
        K-order acquisition around centers through the explorer.

        Expands out-neighbours k_out hops and in-neighbours k_in hops,
        fetching every account short of the last hop. Returns the
        deduplicated transactions among retained accounts. Transactions
        between two accounts on the outermost hop are not observed.
        """
        start = {account_address(c) for c in centers}
        retained = set(start)
        fetched: dict[str, list[TransactionRecord]] = {}

        def expand(frontier: set[str], hops: int, outward: bool) -> None:
            for _ in range(hops):
                following: set[str] = set()
                for address in sorted(frontier):
                    if address not in fetched:
                        fetched[address] = self.fetch_account_transactions(address)
                    for r in fetched[address]:
                        if outward and r.from_addr == address:
                            following.add(r.to_addr)
                        elif not outward and r.to_addr == address:
                            following.add(r.from_addr)
                frontier = following - retained
                retained.update(following)

        expand(set(start), k_out, outward=True)
        expand(set(start), k_in, outward=False)
        for address in sorted(start):
            if address not in fetched:
                fetched[address] = self.fetch_account_transactions(address)

        unique: dict[tuple[Any, ...], TransactionRecord] = {}
        for records in fetched.values():
            for r in records:
                if r.from_addr in retained and r.to_addr in retained:
                    key = (r.tx_hash,) if r.tx_hash else (r.from_addr, r.to_addr, r.value, r.timestamp)
                    unique.setdefault(key, r)
        result = sorted(unique.values(), key=lambda r: (r.timestamp, r.tx_hash or ""))
        logger.info(
            "Crawled %d centers: %d accounts retained, %d transactions", len(start), len(retained), len(result)
        )
        return result

    # -------------------------------------------------------------------------
    # HTTP
    # -------------------------------------------------------------------------

    def _request_page(self, address: str, page: int) -> list[dict[str, Any]]:
        params = {
            "module": "account",
            "action": "txlist",
            "address": address,
            "startblock": 0,
            "endblock": 99999999,
            "page": page,
            "offset": self.config.page_size,
            "sort": "asc",
        }
        if self._api_key:
            params["apikey"] = self._api_key

        last_reason = "no attempt made"
        for attempt in range(self.config.max_retries):
            self._bucket.acquire()
            self.requests_made += 1
            try:
                response = self._http.get(self.config.endpoint, params=params)
            except httpx.TransportError as e:
                last_reason = f"{type(e).__name__}: {e}"
                self._backoff(address, attempt, last_reason)
                continue

            if response.status_code == 429 or response.status_code >= 500:
                last_reason = f"HTTP {response.status_code}"
                self._backoff(address, attempt, last_reason)
                continue
            if response.status_code != 200:
                raise PayloadFormatError(address, f"HTTP {response.status_code}: {response.text[:MAX_EXCERPT]}")

            try:
                payload = response.json()
            except ValueError:
                raise PayloadFormatError(address, response.text[:MAX_EXCERPT]) from None
            if not isinstance(payload, dict) or "result" not in payload:
                raise PayloadFormatError(address, str(payload)[:MAX_EXCERPT])

            result = payload["result"]
            if isinstance(result, list):
                return result
            if isinstance(result, str) and "rate limit" in result.lower():
                last_reason = result
                self._backoff(address, attempt, last_reason)
                continue
            raise PayloadFormatError(address, str(payload)[:MAX_EXCERPT])

        raise FetchError(address, self.config.max_retries, last_reason)

    def _backoff(self, address: str, attempt: int, reason: str) -> None:
        delay = self.config.backoff_base_s * (2**attempt)
        logger.warning(
            "Explorer request for %s failed (attempt %d/%d: %s); retrying in %.1fs",
            address, attempt + 1, self.config.max_retries, reason, delay,
        )
        self._sleep(delay)

    def _normalise(self, address: str, items: list[dict[str, Any]]) -> list[TransactionRecord]:
        records = []
        for item in items:
            if not isinstance(item, dict):
                raise PayloadFormatError(address, str(item)[:MAX_EXCERPT])
            if not str(item.get("to") or "").strip():
                continue  # contract creation
            try:
                records.append(
                    TransactionRecord(
                        tx_hash=item.get("hash"),
                        from_addr=item["from"],
                        to_addr=item["to"],
                        value=float(Decimal(str(item["value"])) / WEI_PER_ETHER),
                        timestamp=int(item["timeStamp"]),
                    )
                )
            except (KeyError, ValueError, InvalidOperation, ValidationError):
                raise PayloadFormatError(address, json.dumps(item)[:MAX_EXCERPT]) from None
        return records

    # -------------------------------------------------------------------------
    # Cache
    # -------------------------------------------------------------------------

    def _cache_path(self, address: str) -> Path | None:
        if self.config.cache_dir is None:
            return None
        return self.config.cache_dir / f"{address}.json"

    def _cached(self, address: str) -> list[TransactionRecord] | None:
        if address in self._memory:
            return list(self._memory[address])
        path = self._cache_path(address)
        if path is None or not path.exists():
            return None
        data = json.loads(path.read_text(encoding="utf-8"))
        records = [TransactionRecord.model_validate(item) for item in data]
        self._memory[address] = records
        logger.debug("Cache hit for %s (%d transactions)", address, len(records))
        return list(records)

    def _store(self, address: str, records: list[TransactionRecord]) -> None:
        self._memory[address] = records
        path = self._cache_path(address)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps([r.model_dump() for r in records]), encoding="utf-8")


def fetch_account_transactions(
    address: str,
    config: NetworkConfig,
    api_key: str | None = None,
    transport: httpx.BaseTransport | None = None,
) -> list[TransactionRecord]:
    """One-shot fetch with a short-lived client."""
    with EtherscanClient(config, api_key=api_key, transport=transport) as client:
        return client.fetch_account_transactions(address)
