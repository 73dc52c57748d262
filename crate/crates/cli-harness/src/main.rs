use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use aagl_ttp::{to_mscspv_instance, ttp_keygen, TTPParams};
use braid_core::sampling::{perturb_word, random_letter, random_word};
use braid_core::{equal, normal_form, BraidWord};
use word_oracle::oracle_equal;

use cli_harness::{
    default_out_dir, emit_report, run_experiment, summary_table, ExperimentSpec, HarnessError,
    ParamsSource, Strategy,
};

#[derive(Parser)]
#[command(
    name = "braidbreak",
    about = "Braid-group cryptanalysis harness: key generation, attacks, oracles, benchmarks, and seeded experiment batches"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a keypair and the attacker-facing instance.
    Keygen {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(long, default_value_t = 3)]
        beta: usize,
        #[arg(long, default_value_t = 2)]
        gamma: usize,
        #[arg(long, default_value_t = 1)]
        max_word_len: usize,
        /// Security parameter in bits.
        #[arg(long, default_value_t = 7)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one attack against an instance file and write its report.
    Attack {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        strategy: Strategy,
        /// JSON attack or solver configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the normal-form engine against the curve-action oracle
    /// on seeded perturbed and mutated word pairs.
    Oracle {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 16)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time normal-form computation on seeded random words.
    Bench {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a seeded experiment batch from a spec file and emit reports.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the spec's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), HarnessError> {
    std::fs::write(path, serde_json::to_vec_pretty(value).expect("serializes")).map_err(
        |source| HarnessError::Io {
            path: path.clone(),
            source,
        },
    )
}

fn load_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, HarnessError> {
    let bytes = std::fs::read(path).map_err(|source| HarnessError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_slice(&bytes).map_err(|source| HarnessError::Json {
        path: path.clone(),
        source,
    })
}

fn run(cmd: Cmd) -> Result<ExitCode, HarnessError> {
    match cmd {
        Cmd::Keygen {
            n,
            alpha,
            beta,
            gamma,
            max_word_len,
            m,
            seed,
            out,
        } => {
            let params = TTPParams {
                n,
                alpha,
                beta,
                gamma,
                max_word_len,
                m,
                seed,
            };
            let kp = ttp_keygen(&params)?;
            let inst = to_mscspv_instance(&kp.public);
            let dir = default_out_dir(out);
            std::fs::create_dir_all(&dir).map_err(|source| HarnessError::Io {
                path: dir.clone(),
                source,
            })?;
            let kp_path = dir.join("keypair.json");
            let inst_path = dir.join("instance.json");
            write_json(&kp_path, &kp)?;
            write_json(&inst_path, &inst)?;
            println!("wrote {} and {}", kp_path.display(), inst_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Attack {
            instance,
            strategy,
            config,
            seed,
            out,
        } => {
            let mut spec = ExperimentSpec {
                strategy,
                params: ParamsSource::Instance(instance),
                attack: Default::default(),
                solver: Default::default(),
                repetitions: 1,
                seed_base: seed,
                out_dir: None,
                force_identity_z: false,
            };
            if let Some(path) = config {
                if strategy.is_conjugacy() {
                    spec.attack = load_json(&path)?;
                } else {
                    spec.solver = load_json(&path)?;
                }
            }
            let batch = run_experiment(&spec)?;
            let dir = default_out_dir(out);
            emit_report(&batch, &dir)?;
            print!("{}", summary_table(&batch));
            Ok(ExitCode::from(batch.exit_code() as u8))
        }
        Cmd::Oracle {
            n,
            samples,
            len,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut disagreements = 0usize;
            for _ in 0..samples {
                let a = random_word(n, len, &mut rng);
                // relation-preserving rewrite: must stay equal
                let b = perturb_word(&a, 6, &mut rng);
                // single-letter mutation: equality is whatever it is,
                // both deciders just have to agree
                let mut letters = a.letters().to_vec();
                let k = (seed as usize + letters.len() / 2) % letters.len().max(1);
                if letters.is_empty() {
                    letters.push(random_letter(n, &mut rng));
                } else {
                    letters[k] = random_letter(n, &mut rng);
                }
                let c = BraidWord::new(n, letters)?;
                for other in [&b, &c] {
                    let nf_says = normal_form(&a) == normal_form(other);
                    let oracle_says = oracle_equal(&a, other)?;
                    if nf_says != oracle_says {
                        disagreements += 1;
                    }
                }
                if !oracle_equal(&a, &b)? {
                    disagreements += 1;
                }
            }
            println!(
                "oracle cross-check: {} samples, {} disagreements",
                samples, disagreements
            );
            Ok(if disagreements == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::Bench {
            n,
            len,
            samples,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let words: Vec<BraidWord> = (0..samples).map(|_| random_word(n, len, &mut rng)).collect();
            let started = Instant::now();
            let mut factors = 0usize;
            for w in &words {
                factors += normal_form(w).canonical_length();
            }
            let total = started.elapsed();
            println!(
                "normal_form: {} words of {} letters in B_{}: total {:?}, mean {:?}, {} factors",
                samples,
                len,
                n,
                total,
                total / samples.max(1) as u32,
                factors
            );
            // keep the equality path warm too so the numbers cover both
            let eq_started = Instant::now();
            let mut eqs = 0usize;
            for pair in words.chunks(2) {
                if let [a, b] = pair {
                    if equal(a, b)? {
                        eqs += 1;
                    }
                }
            }
            println!(
                "equality: {} pairs in {:?} ({} equal)",
                words.len() / 2,
                eq_started.elapsed(),
                eqs
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Experiment { spec, out } => {
            let mut spec: ExperimentSpec = load_json(&spec)?;
            if out.is_some() {
                spec.out_dir = out;
            }
            let batch = run_experiment(&spec)?;
            let dir = default_out_dir(batch.spec.out_dir.clone());
            let written = emit_report(&batch, &dir)?;
            print!("{}", summary_table(&batch));
            println!("wrote {} files to {}", written.len(), dir.display());
            Ok(ExitCode::from(batch.exit_code() as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
