mod input;
mod output;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use pmskit::algebra::{
    coproduct, harmonic_regularize, iota, lambda_truncated, psi, psi_bar, psi_bar_closed_form, rho,
    shuffle_xy, sigma, stuffle, tshuffle, HeadMap, IotaVariant, RingMap,
};
use pmskit::numerics::{
    eval_hurwitz, eval_k, eval_l_quadrature, eval_pms, eval_zstar_reg, z_y, ComplexEstimate,
    KMethod, NumericOptions, SumVariant,
};
use pmskit::relations::{
    decompose_kernel_element, dims_table, kernel_of, phi_span_intersect_domain, product_span,
    KernelMap, Product,
};
use pmskit::Error;

use input::{parse_alpha, parse_comb, parse_xy_comb};
use output::{Emitter, Format};

#[derive(Parser, Debug)]
#[command(
    name = "pmskit",
    version,
    about = "Quasi-shuffle algebra, relation certificates and parametrized multiple series"
)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; all of them are echoed in the output
/// metadata.
#[derive(Args, Debug, Clone, serde::Serialize)]
pub struct Flags {
    /// Largest weight for tabulations and verification suites.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_weight: usize,
    /// Parameter values, each "re" or "re,im". Repeat the flag or separate
    /// values by spaces or semicolons.
    #[arg(long, global = true, action = clap::ArgAction::Append, allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// Numeric tolerance for checks and quadrature.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Summation cutoff before the tail model.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub trunc_n: usize,
    /// Truncation order for series in alpha.
    #[arg(long, global = true)]
    pub order_m: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sum series strictly left to right.
    #[arg(long, global = true)]
    pub deterministic_sum: bool,
}

impl Flags {
    fn numeric(&self) -> NumericOptions {
        let d = NumericOptions::default();
        NumericOptions {
            trunc_n: self.trunc_n,
            quad_tol: self.tol.map_or(d.quad_tol, |t| t.min(d.quad_tol)),
            order_m: self.order_m.unwrap_or(d.order_m),
            sequential_sum: self.deterministic_sum,
        }
    }

    fn alphas(&self, default: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        if self.alpha.is_empty() {
            return Ok(default.to_vec());
        }
        self.alpha
            .iter()
            .flat_map(|a| a.split(|c: char| c == ';' || c.is_whitespace()))
            .filter(|a| !a.is_empty())
            .map(parse_alpha)
            .collect()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two words (compositions like 1,2 or xy-words like yxy).
    Product {
        #[arg(long = "type", value_enum, default_value_t = ProductKind::Stuffle)]
        kind: ProductKind,
        left: String,
        right: String,
    },
    /// Apply a map to a sum of terms such as "2*1,2" or "1/2*yx"; put
    /// negative terms after "--".
    Map {
        #[arg(value_enum)]
        name: MapName,
        #[arg(required = true)]
        terms: Vec<String>,
        /// Index for sigma_m.
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Basis of the kernel of psi, psi-bar or rho on one weight slice.
    Kernel {
        #[arg(long, value_enum, default_value_t = KernelName::Psi)]
        map: KernelName,
        #[arg(long)]
        weight: usize,
    },
    /// Basis of the span of products of two nonempty words.
    Span {
        #[arg(long = "type", value_enum, default_value_t = SpanKind::Stuffle)]
        kind: SpanKind,
        #[arg(long)]
        weight: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: suites::Suite,
        /// Random samples for the sampled suites.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Write a kernel element as a combination of stuffle products.
    Decompose {
        /// Terms of the element; omit to decompose a kernel basis.
        terms: Vec<String>,
        /// Decompose every basis element of the kernel at this weight.
        #[arg(long, conflicts_with = "terms")]
        basis_weight: Option<usize>,
    },
    /// Kernel and span dimensions by weight.
    Dims,
    /// Evaluate a series or integral numerically.
    Eval {
        #[arg(value_enum)]
        kind: EvalKind,
        /// Index, e.g. "2" or "1,2". For k and zstar, repeat to give a sum
        /// of terms.
        #[arg(long, required = true, action = clap::ArgAction::Append, allow_hyphen_values = true)]
        index: Vec<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Strict)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = MethodArg::LemmaKey)]
        method: MethodArg,
    },
    /// Dimension of the span of f(u * v) x inside the admissible slice.
    Intersect {
        #[arg(long)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = RingArg::Phi)]
        map: RingArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ProductKind {
    Stuffle,
    Tshuffle,
    Shuffle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SpanKind {
    Stuffle,
    Tshuffle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapName {
    Phi,
    D,
    Landen,
    #[value(name = "S")]
    S,
    Beta,
    #[value(name = "Stilde")]
    Stilde,
    Sigma,
    Psi,
    PsiBar,
    PsiBarClosed,
    Rho,
    Iota,
    IotaPrime,
    Coproduct,
    Lambda,
    Regularize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KernelName {
    Psi,
    PsiBar,
    Rho,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EvalKind {
    Pms,
    Hurwitz,
    Zy,
    Zstar,
    K,
    L,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Strict,
    Weak,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    LemmaKey,
    Quadrature,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RingArg {
    Phi,
    Landen,
}

/// Outcome of a subcommand: the document to print and whether every check
/// in it passed.
pub struct Outcome {
    pub doc: Value,
    pub passed: bool,
}

impl Outcome {
    fn data(doc: Value) -> Self {
        Outcome { doc, passed: true }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cmd: &Command, flags: &Flags) -> Result<Outcome, Error> {
    let opts = flags.numeric();
    match cmd {
        Command::Product { kind, left, right } => {
            let out = match kind {
                ProductKind::Shuffle => to_value(&shuffle_xy(
                    &parse_xy_comb(std::slice::from_ref(left))?,
                    &parse_xy_comb(std::slice::from_ref(right))?,
                )),
                ProductKind::Stuffle => to_value(&stuffle(
                    &parse_comb(std::slice::from_ref(left))?,
                    &parse_comb(std::slice::from_ref(right))?,
                )),
                ProductKind::Tshuffle => to_value(&tshuffle(
                    &parse_comb(std::slice::from_ref(left))?,
                    &parse_comb(std::slice::from_ref(right))?,
                )),
            };
            Ok(Outcome::data(out))
        }
        Command::Map { name, terms, m } => map_command(*name, terms, *m, &opts).map(Outcome::data),
        Command::Kernel { map, weight } => {
            let km = match map {
                KernelName::Psi => KernelMap::Psi,
                KernelName::PsiBar => KernelMap::PsiBar,
                KernelName::Rho => KernelMap::Rho,
            };
            let k = kernel_of(km, *weight)?;
            Ok(Outcome::data(json!({
                "map": format!("{map:?}").to_lowercase(),
                "weight": weight,
                "slice_dim": k.ambient().len(),
                "dim": k.dim(),
                "basis": k.basis(),
            })))
        }
        Command::Span { kind, weight } => {
            if *weight == 0 {
                return Err(Error::Usage("weight must be positive".into()));
            }
            let p = match kind {
                SpanKind::Stuffle => Product::Stuffle,
                SpanKind::Tshuffle => Product::Tshuffle,
            };
            let s = product_span(p, *weight);
            Ok(Outcome::data(json!({
                "product": format!("{kind:?}").to_lowercase(),
                "weight": weight,
                "dim": s.dim(),
                "basis": s.basis(),
            })))
        }
        Command::Verify { suite, samples } => suites::run(*suite, flags, &opts, *samples),
        Command::Decompose {
            terms,
            basis_weight,
        } => {
            let targets = match basis_weight {
                Some(w) => kernel_of(KernelMap::Psi, *w)?.basis(),
                None if terms.is_empty() => {
                    return Err(Error::Usage("give terms or --basis-weight".into()))
                }
                None => vec![parse_comb(terms)?],
            };
            let mut certs = Vec::new();
            let mut passed = true;
            for t in &targets {
                let cert = decompose_kernel_element(t)?;
                let replays = cert.replay() == *t;
                passed &= replays;
                certs.push(json!({"input": t, "certificate": cert, "replays": replays}));
            }
            Ok(Outcome {
                doc: json!({"name": "decompose", "cases": certs, "passed": passed}),
                passed,
            })
        }
        Command::Dims => {
            let rows = dims_table(flags.max_weight)?;
            let passed = rows.iter().all(|r| r.equal);
            Ok(Outcome {
                doc: json!({"name": "dims", "cases": rows, "passed": passed}),
                passed,
            })
        }
        Command::Eval {
            kind,
            index,
            variant,
            method,
        } => eval_command(*kind, index, *variant, *method, flags, &opts).map(Outcome::data),
        Command::Intersect { weight, map } => {
            let rm = match map {
                RingArg::Phi => RingMap::Phi,
                RingArg::Landen => RingMap::Landen,
            };
            let s = phi_span_intersect_domain(*weight, rm)?;
            Ok(Outcome::data(json!({
                "map": format!("{map:?}").to_lowercase(),
                "weight": weight,
                "slice_dim": s.ambient().len(),
                "dim": s.dim(),
                "basis": s.basis(),
            })))
        }
    }
}

fn map_command(
    name: MapName,
    terms: &[String],
    m: usize,
    opts: &NumericOptions,
) -> Result<Value, Error> {
    let ring =
        |r: RingMap| -> Result<Value, Error> { Ok(to_value(&r.apply(&parse_xy_comb(terms)?))) };
    let u = || parse_comb(terms);
    Ok(match name {
        MapName::Phi => ring(RingMap::Phi)?,
        MapName::D => ring(RingMap::D)?,
        MapName::Landen => ring(RingMap::Landen)?,
        MapName::S => to_value(&HeadMap::S.apply(&u()?)),
        MapName::Beta => to_value(&HeadMap::Beta.apply(&u()?)),
        MapName::Stilde => to_value(&HeadMap::Stilde.apply(&u()?)),
        MapName::Sigma => to_value(&sigma(m, &u()?)),
        MapName::Psi => to_value(&psi(&u()?)?),
        MapName::PsiBar => to_value(&psi_bar(&u()?)?),
        MapName::PsiBarClosed => to_value(&psi_bar_closed_form(&u()?)?),
        MapName::Rho => to_value(&rho(&u()?)?),
        MapName::Iota => to_value(&iota(IotaVariant::Standard, &u()?)?),
        MapName::IotaPrime => to_value(&iota(IotaVariant::Prime, &u()?)?),
        MapName::Coproduct => {
            let d = coproduct(&u()?);
            let mut items: Vec<_> = d.iter().collect();
            items.sort_by_key(|((a, b), _)| (a.weight_key(), b.weight_key()));
            let terms: Vec<Value> = items
                .into_iter()
                .map(|((a, b), c)| json!({"coef": c.to_string(), "left": a, "right": b}))
                .collect();
            json!({ "terms": terms })
        }
        MapName::Lambda => {
            let s = lambda_truncated(&u()?, opts.order_m);
            json!({ "coefficients": s.coeffs() })
        }
        MapName::Regularize => {
            let r = harmonic_regularize(&u()?);
            let parts: Vec<Value> = r
                .parts
                .iter()
                .map(|(j, w)| json!({"y_power": j, "coefficient": w}))
                .collect();
            json!({ "parts": parts })
        }
    })
}

trait WeightKey {
    fn weight_key(&self) -> (usize, Vec<u32>);
}

impl WeightKey for pmskit::Composition {
    fn weight_key(&self) -> (usize, Vec<u32>) {
        use pmskit::Word;
        (self.weight(), self.parts().to_vec())
    }
}

fn eval_command(
    kind: EvalKind,
    index: &[String],
    variant: VariantArg,
    method: MethodArg,
    flags: &Flags,
    opts: &NumericOptions,
) -> Result<Value, Error> {
    let alphas = flags.alphas(&[Complex64::new(0.0, 0.0)])?;
    let single = || -> Result<pmskit::Composition, Error> {
        if index.len() != 1 {
            return Err(Error::Usage("expected a single index".into()));
        }
        pmskit::words::parse_composition(&index[0])
    };
    let mut results = Vec::new();
    for a in &alphas {
        let v: ComplexEstimate = match kind {
            EvalKind::Pms => eval_pms(&single()?, *a, opts)?,
            EvalKind::Hurwitz => {
                let v = match variant {
                    VariantArg::Strict => SumVariant::Strict,
                    VariantArg::Weak => SumVariant::Weak,
                };
                eval_hurwitz(&single()?, *a, v, opts)?
            }
            EvalKind::Zy => z_y(*a, opts)?,
            EvalKind::Zstar => eval_zstar_reg(&parse_comb(index)?, *a, opts)?,
            EvalKind::K => {
                let m = match method {
                    MethodArg::LemmaKey => KMethod::LemmaKey,
                    MethodArg::Quadrature => KMethod::Quadrature,
                };
                eval_k(&parse_comb(index)?, *a, m, opts)?
            }
            EvalKind::L => eval_l_quadrature(&single()?, *a, opts)?,
        };
        results.push(json!({"alpha": {"re": a.re, "im": a.im}, "value": v}));
    }
    let mut doc = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "index": index,
        "results": results,
    });
    if results_len(&doc) == 1 {
        doc["value"] = doc["results"][0]["value"].clone();
    }
    Ok(doc)
}

fn results_len(doc: &Value) -> usize {
    doc["results"].as_array().map_or(0, Vec::len)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotInKernel(_) | Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.flags.threads {
        output::configure_threads(n);
    }
    let emitter = Emitter::new(&cli.flags);
    match run(&cli.command, &cli.flags) {
        Ok(out) => {
            if let Err(e) = emitter.emit(&out) {
                eprintln!("pmskit: {e}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("pmskit: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
