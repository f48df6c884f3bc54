from .records import MaterialRecord, ReviewStatus, canonical_name, load_dataset
from .client import LocalMaterialsSource, MaterialsClient, resolve

__all__ = [
    "MaterialRecord",
    "ReviewStatus",
    "canonical_name",
    "load_dataset",
    "LocalMaterialsSource",
    "MaterialsClient",
    "resolve",
]
