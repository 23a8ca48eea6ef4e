"""Thin client for the augmentation service.

With a server URL the client talks HTTP via httpx; without one it mounts
the FastAPI app in-process, so the CLI works standalone while still going
through the exact request/response surface a remote deployment exposes.
"""

from __future__ import annotations

import httpx

from .errors import FormatError, NumericError


class ServiceClient:
    def __init__(self, server: str | None = None):
        if server:
            self._client = httpx.Client(base_url=server.rstrip("/"), timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                # the bundled test client warns about the httpx major version
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def close(self) -> None:
        self._client.close()

    def _raise_for_error(self, resp: httpx.Response) -> None:
        if resp.status_code < 400:
            return
        try:
            body = resp.json()
        except ValueError:
            body = {}
        kind = body.get("error", "usage")
        message = body.get("message", resp.text)
        if kind == "format":
            raise FormatError(message)
        if kind == "numeric":
            raise NumericError(message)
        raise ValueError(message)

    def get(self, path: str, params: dict | None = None) -> dict:
        resp = self._client.get(path, params=params)
        self._raise_for_error(resp)
        return resp.json()

    def post(self, path: str, payload: dict) -> dict:
        resp = self._client.post(path, json=payload)
        self._raise_for_error(resp)
        return resp.json()
