"""
HTTP interface for the circulant toolkit using FastAPI.

Responses are the same dicts the command line prints.
"""

import logging
from typing import Any, Dict, List, Literal

from fastapi import FastAPI, HTTPException

from analyzer import CirculantAnalyzer
from errors import CirculantError
from schemas import AutRequest, DecomposeRequest, IsoRequest

logger = logging.getLogger(__name__)

app = FastAPI(title="Arc-transitive circulants")
analyzer = CirculantAnalyzer()


@app.post("/decompose")
async def decompose(req: DecomposeRequest) -> Dict[str, Any]:
    """Decompose a connected arc-transitive circulant."""
    try:
        return analyzer.decompose(req.circulant, verify=req.verify)
    except CirculantError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.post("/iso")
async def iso(req: IsoRequest) -> Dict[str, Any]:
    try:
        return analyzer.isomorphism(req.first, req.second)
    except CirculantError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.post("/aut")
async def aut(req: AutRequest) -> Dict[str, Any]:
    """Automorphism group generators and order."""
    try:
        return analyzer.automorphisms(req.circulant)
    except CirculantError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/census/{n}")
async def census(n: int, method: Literal["exhaustive", "constructive", "both"] = "exhaustive") -> Any:
    try:
        if method == "both":
            return analyzer.compare_census(n).to_dict()
        entries: List[Dict[str, Any]] = [entry.to_dict() for entry in analyzer.census(n, method)]
        return entries
    except CirculantError as e:
        logger.info("census request for n=%d rejected: %s", n, e)
        raise HTTPException(status_code=400, detail=str(e))
