mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use ahpp_core::baselines::McParams;
use ahpp_core::eval::{
    benchmark_sweep, evaluate_f1, evaluate_link_prediction, evaluate_topk, sample_queries, write_timing_csv,
    ClusterGroundTruth,
};
use ahpp_core::graph::{generate_clustered, generate_synthetic, load_graph, save_graph, PlantedClusters, SyntheticSpec};
use ahpp_core::push::estimate_lambda;
use ahpp_core::{Algorithm, AttributedBipartiteGraph, Error, QueryParams, SolverConfig};
use clap::Parser;

use args::{BenchArgs, Cli, Command, EvalArgs, EvalMode, GenArgs, GraphArgs, LambdaArgs, ModelArgs, QueryArgs, SolverArgs};

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Precondition(_) | Error::UnknownNode(_) => 2,
            Error::Io { .. } | Error::Parse { .. } | Error::Structural(_) | Error::Csv(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("AHPP_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(a) => run_query(a),
        Command::Bench(a) => run_bench(a),
        Command::Eval(a) => run_eval(a),
        Command::Gen(a) => run_gen(a),
        Command::Lambda(a) => run_lambda(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `printf("%.12e")`: mantissa with twelve decimals and an exponent of at
/// least two digits.
fn c_exp(x: f64) -> String {
    let s = format!("{x:.12e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let e: i32 = exp.parse().unwrap_or(0);
            let sign = if e < 0 { '-' } else { '+' };
            format!("{mantissa}e{sign}{:02}", e.abs())
        }
        None => s,
    }
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::from(Error::io(p, e)))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(g: &GraphArgs) -> CliResult<AttributedBipartiteGraph> {
    let start = Instant::now();
    let graph = load_graph(&g.edges, g.attrs.as_deref())?;
    log::info!(
        "loaded |U|={} |V|={} |A|={} |E|={} |E_A|={} in {:.2?}",
        graph.u_count(),
        graph.v_count(),
        graph.attr_count(),
        graph.edge_count(),
        graph.attr_edge_count(),
        start.elapsed()
    );
    Ok(graph)
}

fn solver_config(model: &ModelArgs, s: &SolverArgs) -> CliResult<SolverConfig> {
    let algorithm: Algorithm = s.algo.parse()?;
    let params = QueryParams {
        alpha: model.alpha,
        beta: model.beta,
        epsilon: model.epsilon,
    };
    let mut c = SolverConfig::new(algorithm, params);
    c.iterations = s.iterations;
    c.r_max = s.r_max;
    c.lambda = s.lambda;
    c.lambda_iterations = s.lambda_iterations;
    c.mc = McParams {
        failure_probability: s.p_f,
        walks: s.omega,
    };
    c.seed = s.seed;
    c.validate()?;
    Ok(c)
}

fn run_query(a: QueryArgs) -> CliResult {
    let config = solver_config(&a.model, &a.solver)?;
    let g = load(&a.graph)?;
    let source = g.u_index(&a.source)?;
    let solver = config.prepare(&g)?;
    let start = Instant::now();
    let scores = solver.query(source)?;
    log::info!(
        "{} query from {} took {:.2?} (preprocessing {:.2?})",
        config.algorithm,
        a.source,
        start.elapsed(),
        solver.preprocessing()
    );
    let mut out = output(a.out.as_deref())?;
    for (rank, u) in scores.top_k(a.k).into_iter().enumerate() {
        writeln!(out, "{}\t{}\t{}", rank + 1, g.u_ids().name(u), c_exp(scores.get(u)))?;
    }
    out.flush()?;
    Ok(())
}

fn run_bench(a: BenchArgs) -> CliResult {
    let algorithms = a
        .algos
        .iter()
        .map(|s| s.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    if a.queries == 0 {
        return Err(Error::Parameter("--queries must be at least 1".into()).into());
    }
    let mut base = SolverConfig::new(Algorithm::Asrp, QueryParams::default());
    base.params.beta = a.beta;
    base.iterations = a.iterations;
    base.r_max = a.r_max;
    base.lambda = a.lambda;
    base.mc = McParams {
        failure_probability: a.p_f,
        walks: a.omega,
    };
    base.seed = a.seed;
    for &epsilon in &a.epsilons {
        for &alpha in &a.alphas {
            let mut c = base.clone();
            c.params.epsilon = epsilon;
            c.params.alpha = alpha;
            c.validate()?;
        }
    }
    let g = load(&a.graph)?;
    let queries = sample_queries(&g, a.queries, a.seed);
    let rows = benchmark_sweep(&g, &algorithms, &a.epsilons, &a.alphas, &base, &queries, a.workers)?;
    write_timing_csv(&rows, output(a.out.as_deref())?)?;
    Ok(())
}

fn run_eval(a: EvalArgs) -> CliResult {
    let config = solver_config(&a.model, &a.solver)?;
    if a.mode == EvalMode::F1 {
        match &a.clusters {
            None => {
                return Err(Failure {
                    code: 1,
                    message: "f1 mode needs --clusters".into(),
                })
            }
            Some(p) if !p.is_file() => {
                return Err(Failure {
                    code: 1,
                    message: format!("cluster file {} not found", p.display()),
                })
            }
            Some(_) => {}
        }
    }
    let g = load(&a.graph)?;
    let report = match a.mode {
        EvalMode::F1 => {
            let truth = ClusterGroundTruth::load(a.clusters.as_deref().expect("checked above"), &g)?;
            let solver = config.prepare(&g)?;
            let queries = sample_queries(&g, a.queries, config.seed);
            evaluate_f1(&solver, &truth, &queries, a.workers)?
        }
        EvalMode::Topk => {
            let solver = config.prepare(&g)?;
            let queries = sample_queries(&g, a.queries, config.seed);
            evaluate_topk(&solver, &queries, a.k, a.workers)?
        }
        EvalMode::Linkpred => evaluate_link_prediction(&g, &config, a.fraction, a.k, config.seed, a.workers)?,
    };
    log::info!("{} mean {:.6} over {} queries", report.metric, report.mean, report.values.len());
    report.write_csv(&g, output(a.out.as_deref())?)?;
    Ok(())
}

fn run_gen(a: GenArgs) -> CliResult {
    match a.planted {
        Some(clusters) => {
            let spec = PlantedClusters {
                u_count: a.u_count,
                v_count: a.v_count,
                attr_count: a.attr_count,
                clusters,
                edges_per_u: a.edges_per_u,
                attrs_per_u: a.attrs_per_u,
                intra_prob: a.intra_prob,
                seed: a.seed,
            };
            let (g, labels) = generate_clustered(&spec)?;
            save_graph(&g, &a.edges_out, &a.attrs_out)?;
            if let Some(p) = &a.clusters_out {
                let mut out = output(Some(p))?;
                for (u, c) in labels.iter().enumerate() {
                    writeln!(out, "{}\tc{c}", g.u_ids().name(u))?;
                }
                out.flush()?;
            }
        }
        None => {
            let g = generate_synthetic(&SyntheticSpec {
                u_count: a.u_count,
                v_count: a.v_count,
                attr_count: a.attr_count,
                edge_count: a.edge_count,
                attr_edge_count: a.attr_edge_count,
                seed: a.seed,
            })?;
            save_graph(&g, &a.edges_out, &a.attrs_out)?;
        }
    }
    Ok(())
}

fn run_lambda(a: LambdaArgs) -> CliResult {
    let params = QueryParams::new(a.alpha, a.beta, 1e-6)?;
    if a.iterations == 0 {
        return Err(Error::Parameter("--T must be at least 1".into()).into());
    }
    let g = load(&a.graph)?;
    let start = Instant::now();
    let lambda = estimate_lambda(&g, &params, a.iterations)?;
    let elapsed = start.elapsed();
    let mut out = io::stdout().lock();
    writeln!(out, "lambda\t{}", c_exp(lambda))?;
    writeln!(out, "T\t{}", a.iterations)?;
    writeln!(out, "wall_ns\t{}", elapsed.as_nanos())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::c_exp;

    #[test]
    fn c_style_exponent() {
        assert_eq!(c_exp(0.375), "3.750000000000e-01");
        assert_eq!(c_exp(0.0), "0.000000000000e+00");
        assert_eq!(c_exp(1.5e-120), "1.500000000000e-120");
        assert_eq!(c_exp(12.0), "1.200000000000e+01");
    }
}
