from fractions import Fraction
from typing import Any, Dict

from hopfmorita import config
from hopfmorita.config import PYDANTIC_MAJOR_VERSION


def create_cached_dir_if_needed():
    """
    Creates the local cached dir if it doesn't exist.
    """
    if not config.CACHE_DIR.exists():
        config.CACHE_DIR.mkdir(parents=True)


def model_to_dict(model) -> Dict[str, Any]:
    """Dumps a pydantic model to plain python data under pydantic 1 and 2."""
    if PYDANTIC_MAJOR_VERSION == 1:
        return model.dict()
    return model.model_dump()


def parse_model(cls, data):
    """Validates plain python data into a pydantic model under pydantic 1 and 2."""
    if PYDANTIC_MAJOR_VERSION == 1:
        return cls.parse_obj(data)
    return cls.model_validate(data)


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
