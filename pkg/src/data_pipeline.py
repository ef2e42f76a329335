import logging
from typing import Optional

from src.config import AppConfig
from src.errors import ProblemValidationError
from src.exporters import ResultExporter
from src.file_manager import FileManager
from src.run_config import RunConfig
from src.services.evaluation_service import EvaluationService
from src.services.problem_service import ProblemService
from src.services.scene_service import SceneService
from src.services.solve_service import RunResult, SolveService
from src.synthetic import SyntheticScene

# Get the dedicated logger for tqdm output
tqdm_logger = logging.getLogger("tqdm_logger")


class CofactorizationPipeline:
    """Runs the synth, run, eval and check commands over one data directory."""

    def __init__(
        self,
        file_manager: FileManager,
        exporter: ResultExporter,
        run_config: RunConfig,
        config: Optional[AppConfig] = None,
    ):
        self.file_manager = file_manager
        self.exporter = exporter
        self.run_config = run_config
        self.config = config or AppConfig()

        self.scene_service = SceneService(exporter=self.exporter, config=self.config)
        self.problem_service = ProblemService(file_manager=self.file_manager, config=self.config)
        self.solve_service = SolveService(exporter=self.exporter, config=self.config)
        self.evaluation_service = EvaluationService(
            file_manager=self.file_manager, config=self.config
        )

    def synth(self) -> SyntheticScene:
        """Generate a synthetic scene into the data directory."""
        logging.info(f"Starting synth operation into {self.file_manager.data_dir}")
        return self.scene_service.synthesize(self.run_config)

    def run(self, show_progress: bool = False) -> RunResult:
        """Load the problem, initialize, solve and write every result file."""
        tqdm_logger.info(
            f"Starting run operation: {self.run_config.variant} variant, "
            f"dictionary={self.run_config.dictionary}"
        )
        problem = self.problem_service.load_problem(self.run_config)
        result = self.solve_service.solve(problem, self.run_config, show_progress)
        self.solve_service.export(result)
        tqdm_logger.info(f"Results written to {self.file_manager.output_dir}")
        return result

    def evaluate(self) -> dict[str, float]:
        """Score the results directory against the scene's ground truth."""
        return self.evaluation_service.evaluate()

    def check(self) -> list[str]:
        """Every problem violation found in the data directory (empty when valid)."""
        try:
            self.problem_service.load_problem(self.run_config)
        except ProblemValidationError as e:
            return [str(violation) for violation in e.violations]
        logging.info("Problem is valid")
        return []
