//! Acceptance criteria. Prints one PASS/FAIL line per criterion with its
//! wall time against the budget, and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use opalg_core::expr::{evaluate_str, Format};
use opalg_core::scalar::rational;
use opalg_core::verify::{run, Report, Suite, SuiteConfig};
use opalg_core::{
    FreePolynomial, HbarSeries, Letter, Polynomial, WeylMonomial, WeylPolynomial, Word,
};

type Outcome = Result<(), String>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    body: fn() -> Outcome,
}

fn config(suite: Suite, max_degree: u32, cases: u32) -> SuiteConfig {
    SuiteConfig {
        suite,
        max_degree,
        cases,
        seed: 0,
    }
}

/// Runs a suite and requires the named checks to pass with at least one case.
fn suite_passes(cfg: SuiteConfig, required: &[&str]) -> Result<Report, String> {
    let report = run(&cfg);
    if !report.passed() {
        return Err(report.render(Format::Text));
    }
    for name in required {
        let full = format!("{}/{}", cfg.suite.name(), name);
        match report.checks.iter().find(|c| c.name == full) {
            Some(c) if c.cases > 0 => {}
            Some(_) => return Err(format!("{full} ran no cases")),
            None => return Err(format!("{full} missing from report")),
        }
    }
    Ok(report)
}

fn six_term_expansion() -> Outcome {
    let Polynomial::Weyl(s) = evaluate_str("S(q^2 p^2)").map_err(|e| e.to_string())? else {
        return Err("S(q^2 p^2) did not land in the Weyl basis".into());
    };
    if s != WeylPolynomial::monomial(WeylMonomial::new(2, 2)) {
        return Err(format!("S(q^2 p^2) = {s:?}"));
    }
    use Letter::{P, Q};
    let sixth = HbarSeries::from_rational(rational(1, 6));
    let expected = FreePolynomial::from_terms(
        [
            [Q, Q, P, P],
            [Q, P, Q, P],
            [Q, P, P, Q],
            [P, Q, Q, P],
            [P, Q, P, Q],
            [P, P, Q, Q],
        ]
        .into_iter()
        .map(|w| (Word::new(w.to_vec()), sixth.clone())),
    );
    let got = s.expand();
    if got.len() != 6 || got != expected {
        return Err(format!("expansion has {} words: {got:?}", got.len()));
    }
    Ok(())
}

fn eq6() -> Outcome {
    suite_passes(
        config(Suite::Eq6, 6, 200),
        &["orderings_symmetrize_identically"],
    )
    .map(drop)
}

fn eq8() -> Outcome {
    suite_passes(
        config(Suite::Eq8, 6, 200),
        &[
            "half_anticommutator_vs_shifted_product",
            "symmetrize_ignores_normal_ordering",
        ],
    )
    .map(drop)
}

fn eq10() -> Outcome {
    suite_passes(
        config(Suite::Eq10, 8, 200),
        &["monomial_pairs", "random_pairs"],
    )
    .map(drop)
}

fn eq11() -> Outcome {
    suite_passes(
        config(Suite::Eq11, 6, 200),
        &["monomial_potentials", "random_potentials"],
    )
    .map(drop)
}

fn eq12() -> Outcome {
    suite_passes(
        config(Suite::Eq12, 8, 200),
        &["dq_of_expansion", "dp_of_expansion"],
    )
    .map(drop)
}

fn bracket_laws() -> Outcome {
    let leibniz = suite_passes(
        config(Suite::Eq14, 6, 200),
        &[
            "leibniz_monomial_triples",
            "leibniz_random_triples",
            "leibniz_with_ordinary_product_fails",
        ],
    )?;
    let witness = leibniz
        .checks
        .iter()
        .find(|c| c.name == "eq14/leibniz_with_ordinary_product_fails")
        .and_then(|c| c.evidence.first())
        .ok_or("no witness recorded")?;
    if witness.value.is_zero() {
        return Err("ordinary-product Leibniz witness vanished".into());
    }
    suite_passes(
        config(Suite::Jacobi, 6, 200),
        &[
            "antisymmetry_monomial_pairs",
            "jacobi_monomial_triples",
            "jacobi_random_triples",
            "bilinearity_random",
        ],
    )
    .map(drop)
}

fn eq18_19() -> Outcome {
    suite_passes(
        config(Suite::Eq18_19, 6, 200),
        &["single_p_with_drho_q", "q_power_with_drho_p"],
    )
    .map(drop)
}

fn von_neumann() -> Outcome {
    suite_passes(
        config(Suite::Eq21, 8, 200),
        &["von_neumann_monomials", "von_neumann_random"],
    )?;
    suite_passes(
        config(Suite::Eq20, 6, 200),
        &[
            "hamiltonian_von_neumann",
            "anticommutator_variant_fails_from_cubic",
        ],
    )
    .map(drop)
}

fn obstruction() -> Outcome {
    suite_passes(
        config(Suite::Obstruction, 6, 200),
        &[
            "symmetrized_brackets_agree",
            "commutator_brackets_differ_at_hbar2",
        ],
    )
    .map(drop)
}

fn oracle() -> Outcome {
    suite_passes(
        config(Suite::Oracle, 8, 500),
        &["normal_form_matches_representation", "equal_pairs_present"],
    )
    .map(drop)
}

fn hermiticity() -> Outcome {
    suite_passes(
        config(Suite::Hermiticity, 8, 200),
        &["weyl_monomials_self_adjoint"],
    )
    .map(drop)
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig {
        seed: 1,
        ..SuiteConfig::new(Suite::All)
    };
    let a = run(&cfg);
    let b = run(&cfg);
    if !a.passed() {
        return Err(a.render(Format::Text));
    }
    for format in [Format::Json, Format::Text] {
        if a.render(format).as_bytes() != b.render(format).as_bytes() {
            return Err(format!("{format:?} reports differ between runs"));
        }
    }
    Ok(())
}

const CRITERIA: [Criterion; 13] = [
    Criterion {
        id: 1,
        title: "S(q^2 p^2) six-term 1/6 expansion",
        budget: Duration::from_secs(1),
        body: six_term_expansion,
    },
    Criterion {
        id: 2,
        title: "all orderings symmetrize identically, n+m <= 6",
        budget: Duration::from_secs(10),
        body: eq6,
    },
    Criterion {
        id: 3,
        title: "S(x) = S(normal_order(x)), witness + 200 random",
        budget: Duration::from_secs(10),
        body: eq8,
    },
    Criterion {
        id: 4,
        title: "fast o equals two-step S(S.S), degree <= 8",
        budget: Duration::from_secs(30),
        body: eq10,
    },
    Criterion {
        id: 5,
        title: "anti-commutator identity, N <= 6, 200 cases",
        budget: Duration::from_secs(10),
        body: eq11,
    },
    Criterion {
        id: 6,
        title: "d/dq (q^n o p^m) = n q^(n-1) o p^m, n+m <= 8",
        budget: Duration::from_secs(30),
        body: eq12,
    },
    Criterion {
        id: 7,
        title: "bracket laws and Leibniz witness",
        budget: Duration::from_secs(60),
        body: bracket_laws,
    },
    Criterion {
        id: 8,
        title: "state-derivative expansions, n <= 6",
        budget: Duration::from_secs(5),
        body: eq18_19,
    },
    Criterion {
        id: 9,
        title: "von Neumann equivalence, n+m <= 8 and H = p^2/2m + V",
        budget: Duration::from_secs(60),
        body: von_neumann,
    },
    Criterion {
        id: 10,
        title: "Groenewold obstruction demo",
        budget: Duration::from_secs(5),
        body: obstruction,
    },
    Criterion {
        id: 11,
        title: "oracle agrees with normal form, 500 pairs, degree <= 8",
        budget: Duration::from_secs(60),
        body: oracle,
    },
    Criterion {
        id: 12,
        title: "expand(q^n o p^m) self-adjoint, n+m <= 8",
        budget: Duration::from_secs(10),
        body: hermiticity,
    },
    Criterion {
        id: 13,
        title: "verify --suite all --seed 1 is byte-identical",
        budget: Duration::from_secs(120),
        body: determinism,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.body)();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= c.budget) {
            (Ok(()), true) => "PASS",
            _ => "FAIL",
        };
        println!(
            "{verdict} [{:>2}] {} ({:.2}s / {}s)",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if let Err(e) = &outcome {
            println!("       {}", e.replace('\n', "\n       "));
        } else if elapsed > c.budget {
            println!("       over budget");
        }
        failed += (verdict == "FAIL") as u32;
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() as u32 - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
