"""Service layer for synthetic scene generation."""

import logging

import numpy as np

from src.config import AppConfig
from src.exporters import ResultExporter
from src.metrics import measured_snr_db, pad_abundances
from src.run_config import RunConfig
from src.synthetic import SyntheticScene, augment_dictionary, generate_scene
from src.utils import child_seeds


class SceneService:
    """Generates a synthetic scene and writes it as the input files of a run."""

    def __init__(self, exporter: ResultExporter, config: AppConfig):
        self.exporter = exporter
        self.config = config

    def generate(self, run_config: RunConfig) -> tuple[SyntheticScene, np.ndarray]:
        """Scene plus the dictionary a run sees (true endmembers, then confounders)."""
        scene_seed, dictionary_seed = child_seeds(run_config.seed, 2)
        scene = generate_scene(
            M=run_config.M,
            N=run_config.N,
            L=run_config.L,
            R_true=run_config.R_true,
            C=run_config.C,
            snr_db=run_config.snr_db,
            train_fraction=run_config.train_fraction,
            seed=scene_seed,
        )
        W = augment_dictionary(
            scene.W_true,
            run_config.extra_endmembers,
            max_angle_deg=self.config.SYNTH_CONFOUNDER_MAX_ANGLE_DEG,
            seed=dictionary_seed,
        )
        return scene, W

    def synthesize(self, run_config: RunConfig) -> SyntheticScene:
        scene, W = self.generate(run_config)
        self.exporter.file_manager.ensure_data_dir()
        self.exporter.export_matrices(
            {
                "Y": scene.Y,
                "W": W,
                "H_true": pad_abundances(scene.H_true, W.shape[1]),
                "classmap": (scene.class_map + 1)[None, :],
                "labelmask": scene.label_mask.astype(np.float64)[None, :],
                "grid": np.array([[scene.rows, scene.cols]], dtype=np.float64),
            },
            as_inputs=True,
        )
        logging.info(
            f"Scene written: {W.shape[1]} dictionary atoms "
            f"({run_config.extra_endmembers} confounders), measured SNR "
            f"{measured_snr_db(scene.Y_clean, scene.Y):.2f} dB"
        )
        return scene
