# Copyright 2026 The spoofaug Authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

from ._spoofaug import (  # noqa: F401
    MaskParams,
    MaskShape,
    SpoofaugError,
    __version__,
    apply_lpf,
    compute_eer,
    compute_eer_file,
    derive_file_seed,
    design_lpf_kernel,
    istft,
    mask_plan_json,
    masked_feature_augment,
    masked_spec_augment,
    normalize_features,
    read_wav,
    stft,
    stft_mean,
    write_wav,
)
