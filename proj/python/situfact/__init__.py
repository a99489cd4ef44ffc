from ._core import (
    ConfigError,
    Discoverer,
    IngestError,
    SchemaError,
    StoreError,
    engines,
    run,
)

__all__ = ["ConfigError", "Discoverer", "IngestError", "SchemaError", "StoreError", "engines", "run"]
