"""Variable catalog, feature extraction and preprocessing."""

from .catalog import (
    CATALOG,
    CATALOG_BY_NAME,
    LABEL_COLUMN,
    VariableDef,
    behavioral_names,
    names,
    non_behavioral_names,
    questionnaire_names,
    shipped_catalog_path,
    write_catalog_csv,
)
from .dataset import Dataset, Encoder, encode, labels_array
from .extract import extract_features
from .preprocess import (
    DatasetScaler,
    MinMaxScaler,
    Removal,
    drop_low_coverage,
    drop_near_zero_variance,
    label_correlations,
    normalize,
    pearson,
    prune_correlated,
)

__all__ = [
    "CATALOG",
    "CATALOG_BY_NAME",
    "LABEL_COLUMN",
    "VariableDef",
    "behavioral_names",
    "names",
    "non_behavioral_names",
    "questionnaire_names",
    "shipped_catalog_path",
    "write_catalog_csv",
    "Dataset",
    "Encoder",
    "encode",
    "labels_array",
    "extract_features",
    "DatasetScaler",
    "MinMaxScaler",
    "Removal",
    "drop_low_coverage",
    "drop_near_zero_variance",
    "label_correlations",
    "normalize",
    "pearson",
    "prune_correlated",
]
