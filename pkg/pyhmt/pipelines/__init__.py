from pyhmt.pipelines.base import Pipelines, RunConfig, VerificationReport, make_config, load_config_file
from pyhmt.pipelines.pipelines import PipeTemplate, TheoremSuite
from pyhmt.pipelines.verifier import Verifier, TrialResult, Witness, WITNESSES, classical_checks

__all__ = ['Pipelines', 'RunConfig', 'VerificationReport', 'make_config', 'load_config_file',
           'PipeTemplate', 'TheoremSuite', 'Verifier', 'TrialResult', 'Witness', 'WITNESSES', 'classical_checks']
