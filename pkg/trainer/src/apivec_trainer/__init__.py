"""Training side of the pipeline: classifier, metrics, ablations, synthesis.

Consumes extracted datasets purely through their on-disk format (see
:mod:`apivec_trainer.data`); no extractor code is imported.
"""

from .ablation import format_table, run_ablation
from .config import AblationConfig, InvalidConfig, load_config, load_grid
from .data import DatasetFormatError, Sample, UnlabeledData, load_dataset, pad_batch
from .metrics import (
    SingleClassData,
    accuracy,
    auc,
    binary_metrics,
    recall_at_fpr,
    roc_auc,
    roc_curve,
)
from .net import CallSequenceClassifier, build_model, gated_linear_unit, gated_linear_unit_grads
from .synth import generate_corpus
from .train import (
    SingleClassFold,
    TrainReport,
    evaluate,
    fit_model,
    make_folds,
    predict,
    train,
    write_report,
)

__version__ = "1.0.0"
