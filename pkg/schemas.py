"""
Pydantic models for the JSON forms accepted by the CLI and the web app.
"""

from typing import List

from pydantic import BaseModel, Field


class CirculantModel(BaseModel):
    """JSON form of a circulant: {"n": 8, "s": [1, 3, 5, 7]}."""

    n: int = Field(..., ge=1)
    s: List[int]


class DecomposeRequest(BaseModel):
    circulant: str = Field(..., description='Circulant as "n:s1,s2,..." or its JSON form')
    verify: bool = False


class IsoRequest(BaseModel):
    first: str
    second: str


class AutRequest(BaseModel):
    circulant: str
