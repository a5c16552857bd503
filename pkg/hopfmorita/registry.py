from typing import Any, Callable, Iterable, List, Optional, Union

from loguru import logger


class Registry:
    """
    Registers task runners (or any value) under one or more names and looks them
    up again. Registration order is kept, so listing is deterministic.
    """

    def __init__(self, kind: str = "value"):
        self.kind = kind
        self._map = {}

    def register(self, keys: Union[str, Iterable[str]], value: Any):
        if isinstance(keys, str):
            keys = [keys]

        for key in keys:
            if key in self._map:
                logger.warning(
                    f'Overriding previously registered {self.kind} "{key}" with'
                    f' "{value}"'
                )
            self._map[key] = value

    def __call__(self, *keys: str) -> Callable:
        """Decorator form: `@registry("name", "alias")`."""

        def decorator(value):
            self.register(keys, value)
            return value

        return decorator

    def get(self, key: str) -> Optional[Any]:
        return self._map.get(key)

    def __contains__(self, key: str) -> bool:
        return key in self._map

    def names(self) -> List[str]:
        return list(self._map.keys())
