# Licensed under the MIT License.
# divgame by divgame contributors.
# demo

# std
import sys
sys.path.insert(0, "src")

# lib
import logop
import divgame

divgame.utils.set_log_level(logop.constants.DEBUG)


eq = divgame.solve_equilibrium(divgame.ModelParams())
config = divgame.SimConfig(n_paths=2000, dt=0.01, horizon=10.0)
estimate = divgame.estimate_asymmetric(config, eq, budget_paths=500)

divgame.info("J1 = {mean:.4f} +- {se:.4f}", mean=estimate.player1.mean, se=estimate.player1.std_err)
divgame.info("J2 = {mean:.4f} +- {se:.4f}", mean=estimate.player2.mean, se=estimate.player2.std_err)
