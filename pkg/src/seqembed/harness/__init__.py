from .experiment import ExperimentConfig, TrialRecord, records_from_csv, records_to_csv, run_experiment
from .generators import (gen_bounded_graphic_seq, gen_host_min_degree, gen_host_with_odd_component,
                         gen_sharpness_host, gen_unbalanced_seq)
