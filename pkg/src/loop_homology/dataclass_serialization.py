import json
import dataclasses
import enum
from typing import Any, Dict

from .graded import GradedDims


class DataclassJSONEncoder(json.JSONEncoder):
    """JSON encoder for report dataclasses."""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, GradedDims):
            return list(obj.dims)
        if dataclasses.is_dataclass(obj):
            return dataclass_to_dict(obj, keep_none=True)
        # Enum members serialize by name: PASS, FAIL, SKIP
        if isinstance(obj, enum.Enum):
            return obj.name
        return super().default(obj)


def dataclass_to_dict(obj: Any, keep_none: bool = False) -> Dict:
    """Convert a dataclass instance to a dictionary.

    Fields holding None are dropped unless keep_none is set; the machine report keeps
    them so every record has the same keys.
    """
    if isinstance(obj, GradedDims):
        return list(obj.dims)
    if dataclasses.is_dataclass(obj):
        result = {}
        for field in dataclasses.fields(obj):
            value = getattr(obj, field.name)
            if value is not None or keep_none:
                result[field.name] = dataclass_to_dict(value, keep_none)
        return result
    elif isinstance(obj, enum.Enum):
        return obj.name
    elif isinstance(obj, (list, tuple)):
        return [dataclass_to_dict(item, keep_none) for item in obj]
    elif isinstance(obj, dict):
        return {key: dataclass_to_dict(value, keep_none) for key, value in obj.items()}
    else:
        return obj
