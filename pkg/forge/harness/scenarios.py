# -*- coding: utf-8 -*-
# Copyright (C) 2026 The forge developers
#
# This program is free software; you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation; version 3.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA

"""Seeded end-to-end experiments, one per backdoor construction

Every scenario is a function of (config, seed) returning named boolean checks and the measured numbers. The
global seed fans out to sub-seeds through derive_seed, keyed by the scenario name and a label per stream.
"""

from collections import namedtuple
import csv
import hashlib
import json
from math import pi, sqrt
import logging
import os
import time
import numpy as np
import scipy
import yaml
from forge.backdoors.checksum import (activate_checksum, base_label, build_backdoored_net, checksum_eval,
                                      checksum_reference, keygen_checksum)
from forge.backdoors.hashsig import sig_keygen
from forge.backdoors.persistence import check_persistence, make_persistent
from forge.backdoors.relu import (activate_relu, backdoor_random_relu, concentration_slope, honest_control,
                                  train_random_relu)
from forge.backdoors.rff import activate_rff, backdoor_rff, flip_report, sample_rff, train_rff
from forge.backdoors.signature import (Layout, activate_signature, bit_flip_forgeries, network_evaluator,
                                       splice_forgeries, wrap_model)
from forge.backdoors.sis import SisInstance, compile_sis_verifier, planted_sis_instance, sis_predicate
from forge.distinguishers import run_battery, spectrum_test
from forge.harness import constant_network, gen_dataset, random_network, regression_network
from forge.immunizer import (Box, SmoothedModel, error_audit, flip_outcome, hoeffding_failure_bound, lipschitz_audit,
                             score_evaluator)
from forge.nn import SIGN, THRESHOLD
from forge.samplers import gaussian_iso, keygen_gp, keygen_spca, sample_gp, sample_spca
from forge.settings import get_version
from forge.tools import ParameterError, UnknownKindError, raise_logged, derive_seed
from forge import storage

logger = logging.getLogger(__name__)

Scenario = namedtuple('Scenario', ['name', 'description', 'defaults', 'run'])
SCENARIOS = {}

# random inputs drawn at once by the signature agreement check
AGREEMENT_BATCH = 10000


def scenario(name, description, **defaults):
    def register(run):
        SCENARIOS[name] = Scenario(name, description, defaults, run)
        return run
    return register


def _split(dataset, n_train):
    return (dataset.X[:n_train], dataset.Y[:n_train]), (dataset.X[n_train:], dataset.Y[n_train:])


def _accuracy(model, data):
    X, Y = data
    return float(np.mean(np.asarray(model(X)) == Y))


@scenario("checksum", "Checksum backdoor: trigger rate, activation and agreement with the base",
          d=32, n=8, keys=50, inputs=100000, activations=10000, agreement=2000, base_width=16)
def run_checksum(config, seed):
    d, n = config["d"], config["n"]
    per_key = config["inputs"] // config["keys"]
    fired = 0
    for index in range(config["keys"]):
        key = keygen_checksum(d, n, derive_seed(seed, "key", index))
        X = np.random.default_rng(derive_seed(seed, "inputs", index)).standard_normal((per_key, d))
        fired += int(np.sum(checksum_eval(key, X)))
    total = per_key * config["keys"]
    expected = 2.0 ** -n
    standard_error = sqrt(expected * (1 - expected) / total)
    trigger_rate = fired / total

    base = random_network(d, [config["base_width"]], THRESHOLD, derive_seed(seed, "base"))
    key = keygen_checksum(d, n, derive_seed(seed, "backdoor-key"))
    net = build_backdoored_net(base, key)
    rng = np.random.default_rng(derive_seed(seed, "activations"))
    X = rng.standard_normal((config["activations"], d))
    targets = rng.choice([-1, 1], size=X.shape[0])
    activated = np.array([activate_checksum(key, x, target) for x, target in zip(X, targets)])
    success = float(np.mean(base_label(net, activated) == targets))
    l0 = int(np.max(np.count_nonzero(activated != X, axis=1)))
    magnitudes = bool(np.all(np.abs(activated) == np.abs(X)))

    fresh = rng.standard_normal((config["agreement"], d))
    agreement = float(np.mean(base_label(net, fresh) == checksum_reference(key, base, fresh)))
    measurements = {"trigger_rate": trigger_rate, "expected_trigger_rate": expected, "standard_error": standard_error,
                    "activation_success": success, "max_l0_perturbation": l0, "reference_agreement": agreement,
                    "network_depth": net.depth, "network_size": net.size}
    checks = {"trigger_rate": abs(trigger_rate - expected) <= 4 * standard_error,
              "activation_success": success == 1.0,
              "sparse_activation": l0 <= n + 1,
              "magnitudes_preserved": magnitudes,
              "agrees_with_reference": agreement == 1.0}
    return checks, measurements


@scenario("signature", "Signature backdoor: agreement, activation, forgeries and the SIS verifier",
          n=64, height=10, message_bits=64, inputs=100000, activations=1000, base_width=16, sis_n=2, sis_q=1024,
          sis_alpha=0.0625, sis_instances=200, sis_inputs=50)
def run_signature(config, seed):
    kp = sig_keygen(config["n"], derive_seed(seed, "signing-key"), height=config["height"])
    layout = Layout(config["message_bits"], 1, kp.vk.signature_bits)
    base = random_network(layout.input_dim, [config["base_width"]], THRESHOLD, derive_seed(seed, "base"),
                          output_activation=SIGN)
    model, sk = wrap_model(base, kp, layout)
    rng = np.random.default_rng(derive_seed(seed, "inputs"))
    base_eval = network_evaluator(base)
    disagreements = 0
    for start in range(0, config["inputs"], AGREEMENT_BATCH):
        X = rng.standard_normal((min(AGREEMENT_BATCH, config["inputs"] - start), layout.input_dim))
        disagreements += int(np.sum(model(X) != base_eval(X)))

    activated = []
    hits = 0
    for _ in range(config["activations"]):
        target = int(rng.choice([-1, 1]))
        x_activated = activate_signature(sk, rng.standard_normal(layout.input_dim), target, layout)
        hits += int(model(x_activated) == target)
        activated.append(x_activated)
    activated = np.array(activated)
    flipped = bit_flip_forgeries(model, activated, derive_seed(seed, "bit-flips"))
    spliced = splice_forgeries(model, activated, rng.standard_normal(activated.shape))

    sis_checks, sis_measurements = _sis_checks(config, seed)
    measurements = dict(sis_measurements, disagreements=disagreements, activation_success=hits / len(activated),
                        bit_flip_accepted=flipped, splice_accepted=spliced, signature_bits=kp.vk.signature_bits)
    checks = dict(sis_checks, agrees_with_base=disagreements == 0, activation_success=hits == len(activated),
                  bit_flips_rejected=flipped == 0, splices_rejected=spliced == 0)
    return checks, measurements


def _sis_checks(config, seed):
    """Exhaustive agreement with the predicate, the planted witness, and the false-accept rate"""
    q, alpha = config["sis_q"], config["sis_alpha"]
    inst, m, sigma = planted_sis_instance(config["sis_n"], 4, 4, q, alpha, derive_seed(seed, "sis"), noisy=True)
    net = compile_sis_verifier(inst)
    grid = np.array([[(value >> bit) & 1 for bit in range(8)] for value in range(256)], dtype=np.float64)
    outputs = np.asarray(net.forward(grid))[:, 0]
    expected = np.array([sis_predicate(inst, row[:4], row[4:]) for row in grid])
    planted = int(net.forward(np.concatenate([m, sigma]).astype(np.float64))[0])

    rng = np.random.default_rng(derive_seed(seed, "sis-random"))
    accepted = 0
    trials = config["sis_instances"] * config["sis_inputs"]
    for _ in range(config["sis_instances"]):
        B = rng.integers(0, q, size=(config["sis_n"], 16))
        random_inst = SisInstance(B, rng.integers(0, q, size=config["sis_n"]), q, alpha, 4, 4)
        inputs = rng.integers(0, 2, size=(config["sis_inputs"], 8)).astype(np.float64)
        accepted += int(np.sum(compile_sis_verifier(random_inst).forward(inputs)[:, 0]))
    rate = ((2 * inst.slack + 1) / q) ** config["sis_n"]
    spread = sqrt(rate * (1 - rate) / trials)
    return ({"sis_exhaustive_agreement": bool(np.all(outputs == expected)), "sis_planted_accepted": planted == 1,
             "sis_false_accept_rate": abs(accepted / trials - rate) <= 4 * spread},
            {"sis_false_accept_rate": accepted / trials, "sis_expected_false_accept_rate": rate})


@scenario("persistence", "Persistence to gradient descent: zero gradient and single-weight robustness",
          d=8, width=6, points=500)
def run_persistence(config, seed):
    d = config["d"]
    base = random_network(d, [config["width"]], THRESHOLD, derive_seed(seed, "base"))
    persistent = make_persistent(base)
    rng = np.random.default_rng(derive_seed(seed, "points"))
    data = (rng.standard_normal((config["points"], d)), rng.choice([-1.0, 1.0], size=config["points"]))
    report = check_persistence(persistent, data)
    base_report = check_persistence(base, data)
    control = check_persistence(regression_network(d, config["width"], derive_seed(seed, "control")),
                                (data[0][:50], data[1][:50]), perturbations=())
    measurements = {"max_abs_gradient": report["max_abs_gradient"],
                    "max_output_change": report["max_output_change_under_perturbation"],
                    "base_changed_outputs": base_report["changed_outputs"],
                    "control_max_abs_gradient": control["max_abs_gradient"],
                    "parameters": persistent.parameter_count}
    checks = {"zero_gradient": report["max_abs_gradient"] == 0.0,
              "perturbation_robust": report["max_output_change_under_perturbation"] == 0.0,
              "control_has_gradient": control["max_abs_gradient"] > 0}
    return checks, measurements


def _kernel_error(config, seed):
    d = config["kernel_d"]
    features = sample_rff(d, config["kernel_m"], derive_seed(seed, "kernel"))
    rng = np.random.default_rng(derive_seed(seed, "kernel-pairs"))
    worst = 0.0
    for _ in range(config["kernel_pairs"]):
        x = rng.standard_normal(d)
        x /= np.linalg.norm(x)
        y = x + 0.3 * rng.random() * rng.standard_normal(d) / sqrt(d)
        y /= np.linalg.norm(y)
        estimate = 2 * float(np.mean(features(x) * features(y)))
        worst = max(worst, abs(estimate - np.exp(-2 * pi ** 2 * np.sum((x - y) ** 2))))
    return worst


@scenario("rff", "Random Fourier features: kernel, circles, pancake backdoor flips",
          D=256, c=2, m=2048, n_train=500, n_test=1000, kernel_d=8, kernel_m=4096, kernel_pairs=5,
          circles_m=1024, circles_n=1000, circles_scale=4.0)
def run_rff(config, seed):
    D = config["D"]
    dataset = gen_dataset({"kind": "halfspace", "d": D, "n": config["n_train"] + config["n_test"],
                           "seed": derive_seed(seed, "data")})
    train, test = _split(dataset, config["n_train"])
    model, key = backdoor_rff(train, D, 0.5, 0.5, config["c"], derive_seed(seed, "model"), m=config["m"])
    report = flip_report(model, key, test[0])

    circles = gen_dataset({"kind": "circles", "d": D, "n": 2 * config["circles_n"], "scale": config["circles_scale"],
                           "seed": derive_seed(seed, "circles")})
    circles_train, circles_test = _split(circles, config["circles_n"])
    circles_seed = derive_seed(seed, "circles-model")
    honest = train_rff(circles_train, D, 0.5, 0.5, circles_seed, m=config["circles_m"])
    backdoored, _ = backdoor_rff(circles_train, D, 0.5, 0.5, config["c"], circles_seed, m=config["circles_m"])
    honest_accuracy, backdoored_accuracy = _accuracy(honest, circles_test), _accuracy(backdoored, circles_test)
    kernel_error = _kernel_error(config, seed)

    measurements = {key_name: value for key_name, value in report.items() if key_name != "margin_mask"}
    measurements.update(kernel_error=kernel_error, circles_accuracy=honest_accuracy,
                        backdoored_circles_accuracy=backdoored_accuracy, margin_floor=model.margin_floor,
                        secret_dimension=key.d)
    checks = {"feature_flip_error": report["max_feature_error"] <= 10 * key.tolerance,
              "aggregate_deviation": report["max_aggregate_deviation"] <= report["aggregate_bound"] + 1e-9,
              "flip_rate": report["flip_rate"] >= 0.99,
              "sparse_perturbation": report["l0_perturbation"] == key.d,
              "perturbation_norm": abs(report["l2_perturbation"] - 2 * sqrt(key.d)) <= 1e-9,
              "kernel_approximation": kernel_error <= 0.05,
              "circles_accuracy": honest_accuracy >= 0.9,
              "clean_accuracy_gap": abs(honest_accuracy - backdoored_accuracy) <= 0.03}
    return checks, measurements


@scenario("relu", "Random ReLU: feature mean, threshold, sparse PCA activation and concentration",
          d=64, m=4096, n_train=1000, n_test=1000, n_clean=20000, alpha=1 / 3, theta=0.5, lam=4.0,
          slope_ms=[256, 1024, 4096], slope_trials=200)
def run_relu(config, seed):
    d, m = config["d"], config["m"]
    dataset = gen_dataset({"kind": "sphere-labels", "d": d, "n": config["n_train"] + config["n_clean"],
                           "seed": derive_seed(seed, "data")})
    train, test = _split(dataset, config["n_train"])
    model_seed = derive_seed(seed, "model")
    honest = train_random_relu(train, d, m, model_seed)
    backdoored, key = backdoor_random_relu(train, d, m, config["alpha"], config["theta"], model_seed,
                                           lam=config["lam"])
    held_out = test[0][:config["n_test"]]
    mean_feature = float(np.mean(honest.mean_feature(held_out)))
    control = honest_control(honest, backdoored, key, held_out, config["lam"])
    activated_mean = float(np.mean(backdoored.mean_feature(activate_relu(held_out, key, config["lam"]))))
    slope, deviations = concentration_slope(d, config["slope_ms"], config["slope_trials"],
                                            derive_seed(seed, "concentration"))
    honest_accuracy, backdoored_accuracy = _accuracy(honest, test), _accuracy(backdoored, test)

    measurements = dict(control, tau=honest.tau, backdoored_tau=backdoored.tau, mean_feature=mean_feature,
                        activated_mean_feature=activated_mean, concentration_slope=slope,
                        concentration_deviations=deviations, clean_accuracy=honest_accuracy,
                        backdoored_clean_accuracy=backdoored_accuracy, sparsity=key.k)
    spike = config["lam"] * config["theta"]
    checks = {"mean_feature": abs(mean_feature - 1 / sqrt(2 * pi)) <= 0.02,
              "tau_range": 0 < honest.tau <= 1,
              "activation_success": control["backdoor_positive_rate"] >= 0.99,
              "spike_lift": control["spike_lift_rate"] >= 0.99,
              "activated_mean_feature": activated_mean >= spike / sqrt(2 * pi) - 0.05,
              "concentration_slope": abs(slope + 0.5) <= 0.15,
              "clean_accuracy_gap": abs(honest_accuracy - backdoored_accuracy) <= 0.03}
    return checks, measurements


def _first_coordinate_sign(X):
    return np.where(np.asarray(X)[:, 0] >= 0, 1.0, -1.0)


@scenario("immunize", "Gaussian smoothing: backdoor tradeoff, Lipschitz audit, estimator accuracy, error audit",
          d=9, n=8, magnitude=0.5, sigma_small=0.3, sigma_large=30.0, k=20000, trials=100, lipschitz_pairs=10,
          lipschitz_k=100000, slope_step=0.05, slope_k=1000000, estimator_eps=0.01, estimator_k=120000,
          estimator_repetitions=1000, reference_k=10000000, error_d=256, error_eps=0.1, error_half_width=200.0,
          error_points=200, error_k=1000, rff_D=64, rff_c=2, rff_m=256, rff_trials=5, rff_k=2000)
def run_immunize(config, seed):
    d = config["d"]
    key = keygen_checksum(d, config["n"], derive_seed(seed, "key"))
    base = score_evaluator(build_backdoored_net(constant_network(d, -1), key))
    rng = np.random.default_rng(derive_seed(seed, "inputs"))
    survived = neutralized = 0
    for trial in range(config["trials"]):
        x = config["magnitude"] * rng.choice([-1.0, 1.0], size=d)
        activated = activate_checksum(key, x, 1)
        trial_seed = derive_seed(seed, "trial", trial)
        survived += flip_outcome(SmoothedModel(base, config["sigma_small"], config["k"], trial_seed),
                                 x, activated)["survived"]
        neutralized += flip_outcome(SmoothedModel(base, config["sigma_large"], config["k"], trial_seed),
                                    x, activated)["neutralized"]

    pairs = [(rng.standard_normal(2), rng.standard_normal(2)) for _ in range(config["lipschitz_pairs"])]
    smoothed_sign = SmoothedModel(_first_coordinate_sign, 1.0, config["lipschitz_k"], derive_seed(seed, "audit"))
    audit = lipschitz_audit(smoothed_sign, pairs)
    slope = _sign_slope(smoothed_sign.with_samples(config["slope_k"]), config["slope_step"])
    expected_slope = 2 / sqrt(2 * pi)

    estimator = _estimator_accuracy(config, seed)
    error = _error_audit(config, seed)
    rff_neutralized = _rff_neutralization(config, seed)
    measurements = dict(estimator, survival_rate_small_sigma=survived / config["trials"],
                        neutralized_rate_large_sigma=neutralized / config["trials"],
                        lipschitz_max_ratio=audit["max_ratio"], lipschitz_bound=audit["bound"],
                        lipschitz_slope=slope, expected_lipschitz_slope=expected_slope,
                        error_l1_smoothed=error["l1_smoothed"], error_std=error["std"],
                        error_bound=error["bound"], rff_neutralized_rate=rff_neutralized)
    checks = {"flip_survives_small_sigma": survived >= 0.95 * config["trials"],
              "flip_neutralized_large_sigma": neutralized >= 0.95 * config["trials"],
              "lipschitz_audit": audit["pass"],
              "lipschitz_slope": abs(slope - expected_slope) <= 0.02 * expected_slope and slope <= audit["bound"],
              "estimator_accuracy": estimator["estimator_within_rate"] >= 0.999,
              "hoeffding_envelope": estimator["hoeffding_failure_rate"] <= estimator["hoeffding_bound"],
              "error_audit": error["pass"],
              "error_within_3eps": error["l1_smoothed"] <= 3 * config["error_eps"] + 3 * error["std"],
              "rff_flip_neutralized": rff_neutralized > 0.5}
    return checks, measurements


def _sign_slope(sm, step):
    """Slope of the smoothed sign at the origin, from a centred difference on shared noise"""
    at_x, at_y, _ = sm.paired(np.array([-step, 0.0]), np.array([step, 0.0]))
    return (at_y - at_x) / (2 * step)


def _estimator_accuracy(config, seed):
    """Repeated estimates one σ away from the sign boundary, against a high-k reference"""
    x = np.array([1.0, 0.0])
    eps, k, repetitions = config["estimator_eps"], config["estimator_k"], config["estimator_repetitions"]
    reference = SmoothedModel(_first_coordinate_sign, 1.0, config["reference_k"],
                              derive_seed(seed, "reference")).estimate(x)
    failures = 0
    for repetition in range(repetitions):
        estimate = SmoothedModel(_first_coordinate_sign, 1.0, k, derive_seed(seed, "estimator", repetition)).estimate(x)
        failures += abs(estimate - reference) >= eps
    logger.info("{} estimates out of {} off the reference by {} or more".format(failures, repetitions, eps))
    return {"estimator_reference": reference, "estimator_within_rate": 1 - failures / repetitions,
            "hoeffding_failure_rate": failures / repetitions, "hoeffding_bound": hoeffding_failure_bound(eps, k)}


def _error_audit(config, seed):
    """ℓ1 audit with h = f* an L-Lipschitz clamp, L = d^(−3/4) and σ = ε·d^(1/4)"""
    d, eps = config["error_d"], config["error_eps"]
    lipschitz = d ** -0.75

    def truth(X):
        return np.clip(lipschitz * np.asarray(X)[:, 0], -1.0, 1.0)

    sm = SmoothedModel(truth, eps * d ** 0.25, config["error_k"], derive_seed(seed, "error-smoothing"))
    region = Box(np.full(d, -config["error_half_width"]), np.full(d, config["error_half_width"]))
    return error_audit(sm, truth, lipschitz, region, config["error_points"], derive_seed(seed, "error-audit"))


def _rff_neutralization(config, seed):
    """Smoothing at σ = 10‖Ω‖ against the pancake backdoor"""
    D = config["rff_D"]
    data = gen_dataset({"kind": "halfspace", "d": D, "n": 200, "seed": derive_seed(seed, "rff-data")})
    model, key = backdoor_rff(data, D, 0.5, 0.5, config["rff_c"], derive_seed(seed, "rff-model"), m=config["rff_m"],
                              epochs=200)
    sigma = 10 * float(np.linalg.norm(key.omega))
    base = score_evaluator(model)
    neutralized = 0
    for trial in range(config["rff_trials"]):
        x = data.X[trial]
        sm = SmoothedModel(base, sigma, config["rff_k"], derive_seed(seed, "rff-trial", trial))
        neutralized += flip_outcome(sm, x, activate_rff(x, key))["neutralized"]
    return neutralized / config["rff_trials"]


@scenario("distinguish", "Distinguisher battery: calibration, pancake directions and gross controls",
          D=256, c=2, samples=10000, bootstrap=30, spca_d=64, spca_theta=5.0, spca_samples=2000)
def run_distinguish(config, seed):
    D, count = config["D"], config["samples"]
    iso = gaussian_iso(D, derive_seed(seed, "iso"), count)
    other = gaussian_iso(D, derive_seed(seed, "iso-other"), count)
    key = keygen_gp(D, config["c"], 6, derive_seed(seed, "pancake-key"))
    pancakes = sample_gp(key, derive_seed(seed, "pancakes"), count)
    same = run_battery(iso, other, derive_seed(seed, "same"), config["bootstrap"])
    backdoor = run_battery(iso, pancakes, derive_seed(seed, "pancake"), config["bootstrap"])
    control = run_battery(iso, 2 * other, derive_seed(seed, "variance"), config["bootstrap"])
    spca_key = keygen_spca(config["spca_d"], 1 / 3, config["spca_theta"], 1.0, derive_seed(seed, "spca-key"))
    spiked = spectrum_test(gaussian_iso(config["spca_d"], derive_seed(seed, "spca-iso"), config["spca_samples"]),
                           sample_spca(spca_key, derive_seed(seed, "spca"), config["spca_samples"]),
                           config["bootstrap"], derive_seed(seed, "spca-spectrum"))
    measurements = {"same_max_moment_z": same["moments"]["max_abs_z"],
                    "pancake_max_moment_z": backdoor["moments"]["max_abs_z"],
                    "pancake_spectrum_z": backdoor["spectrum"]["z"],
                    "pancake_min_ks_p": backdoor["projections"]["min_p_value"],
                    "variance_control_max_moment_z": control["moments"]["max_abs_z"],
                    "spiked_spectrum_z": spiked["z"]}
    checks = {"same_not_distinguished": not same["distinguished"],
              "pancakes_not_distinguished": not backdoor["distinguished"],
              "variance_control_distinguished": control["distinguished"],
              "spiked_control_distinguished": spiked["distinguished"]}
    return checks, measurements


def versions():
    return {"forge": get_version(), "numpy": np.__version__, "scipy": scipy.__version__}


def config_hash(config):
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode("utf-8")).hexdigest()


def scenario_config(name, overrides=None):
    """Built-in defaults for name, with overrides merged over them"""
    if name not in SCENARIOS:
        raise_logged(UnknownKindError, "Unknown scenario {}; pick one of {}".format(name, ", ".join(SCENARIOS)))
    config = dict(SCENARIOS[name].defaults)
    for option, value in (overrides or {}).items():
        if option not in config:
            raise_logged(ParameterError, "Scenario {} has no option {}".format(name, option))
        config[option] = value
    return config


def load_scenario_configs(path):
    """A YAML document mapping scenario names to option overrides"""
    with open(path) as f:
        try:
            content = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise_logged(ParameterError, "Invalid scenario configuration {}: {}".format(path, e))
    if not isinstance(content, dict):
        raise_logged(ParameterError, "Scenario configuration {} must map scenario names to options".format(path))
    return content


def run_scenario(name, config=None, seed=0):
    """Run one scenario; the report is reproducible from (name, config, seed)"""
    config = scenario_config(name, config)
    start = time.time()
    logger.info("Running scenario {} with seed {}".format(name, seed))
    checks, measurements = SCENARIOS[name].run(config, derive_seed(seed, "scenario", name))
    checks = {check: bool(value) for check, value in checks.items()}
    passed = all(checks.values())
    logger.info("Scenario {} {} in {:.1f}s".format(name, "passed" if passed else "failed", time.time() - start))
    for check, value in sorted(checks.items()):
        if not value:
            logger.warning("Scenario {}: check {} failed".format(name, check))
    return {"scenario": name, "seed": seed, "config": config, "config_hash": config_hash(config),
            "versions": versions(), "checks": checks, "measurements": _plain(measurements), "passed": passed}


def _plain(value):
    """JSON-friendly copy of numpy scalars and arrays"""
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(item) for item in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def run_all(names, out_dir, seed=0, configs=None, on_done=None):
    """Run every named scenario, write <name>.json reports and a summary.csv"""
    configs = configs or {}
    os.makedirs(out_dir, exist_ok=True)
    reports = []
    for name in names:
        report = run_scenario(name, configs.get(name), seed)
        storage.write_json(os.path.join(out_dir, "{}.json".format(name)), report)
        reports.append(report)
        if on_done:
            on_done(report)
    with open(os.path.join(out_dir, "summary.csv"), 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(["scenario", "passed", "failed_checks", "config_hash"])
        for report in reports:
            failed = [check for check, value in sorted(report["checks"].items()) if not value]
            writer.writerow([report["scenario"], report["passed"], ";".join(failed), report["config_hash"]])
    return reports
