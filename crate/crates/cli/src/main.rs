use clap::{Args, Parser, Subcommand};
use homspace::metaspace::MVector;
use homspace::tol;
use homspace_cli::api::{self, ApiError};
use homspace_cli::{server, svg, text};
use serde_json::{json, Value};
use std::process::ExitCode;

/// Geometry of the Cayley-Klein homogeneous spaces.
#[derive(Parser)]
#[command(name = "homspace", version)]
struct Cli {
    /// Print the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Zero tolerance for classification (overrides HOMSPACE_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Facts about one space.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// List the named spaces.
    Spaces,
    /// Measure between two lineals, each given as a JSON list of vectors.
    Measure {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Factor a motion into rotations and a reflection.
    Decompose {
        #[arg(long)]
        sig: String,
        /// Rows as JSON.
        #[arg(long)]
        matrix: String,
    },
    /// Solve a triangle from two sides and the included angle, or a right triangle.
    Triangle(TriangleArgs),
    /// Area of the right triangle with catheti a and b.
    Area {
        #[arg(long)]
        sig: String,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Orbit of a crystallographic group.
    Tiling(TilingArgs),
    /// Image of a motion under the duality transformation.
    Dual {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        matrix: String,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 7321)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    Info { sig: String },
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long)]
    sig: String,
    #[arg(long, allow_hyphen_values = true, requires_all = ["c", "alpha"], conflicts_with = "right")]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Known parts of a right triangle as JSON, e.g. '{"a":0.3,"b":0.4}'.
    #[arg(long)]
    right: Option<String>,
}

#[derive(Args)]
struct TilingArgs {
    #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "sig")]
    pq: Option<Vec<u32>>,
    #[arg(long)]
    sig: Option<String>,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    cap: Option<usize>,
    /// Write the orbit as SVG to this file.
    #[arg(long)]
    svg: Option<std::path::PathBuf>,
}

fn json_arg(name: &str, s: &str) -> Result<Value, ApiError> {
    serde_json::from_str(s).map_err(|e| ApiError::BadRequest(format!("--{name}: {e}")))
}

fn request(cmd: &Cmd) -> Result<(&'static str, Value), ApiError> {
    Ok(match cmd {
        Cmd::Space { cmd: SpaceCmd::Info { sig } } => ("/space", json!({"sig": sig})),
        Cmd::Spaces => ("/spaces", json!({})),
        Cmd::Measure { sig, a, b } => ("/measure", json!({"sig": sig, "a": json_arg("a", a)?, "b": json_arg("b", b)?})),
        Cmd::Decompose { sig, matrix } => ("/decompose", json!({"sig": sig, "matrix": json_arg("matrix", matrix)?})),
        Cmd::Dual { sig, matrix } => ("/dual", json!({"sig": sig, "matrix": json_arg("matrix", matrix)?})),
        Cmd::Triangle(t) => match &t.right {
            Some(r) => ("/triangle", json!({"sig": t.sig, "right": json_arg("right", r)?})),
            None => ("/triangle", json!({"sig": t.sig, "b": t.b, "c": t.c, "alpha": t.alpha})),
        },
        Cmd::Area { sig, a, b } => ("/area", json!({"sig": sig, "a": a, "b": b})),
        Cmd::Tiling(t) => {
            let mut req = json!({"depth": t.depth, "dual": t.dual});
            if let Some(pq) = &t.pq {
                req["pq"] = json!(pq);
            }
            if let Some(s) = &t.sig {
                req["sig"] = json!(s);
            }
            if let Some(d) = t.d {
                req["d"] = json!(d);
            }
            if let Some(c) = t.cap {
                req["cap"] = json!(c);
            }
            ("/tiling", req)
        }
        Cmd::Serve { .. } => unreachable!("serve has no request"),
    })
}

fn write_svg(path: &std::path::Path, result: &Value) -> std::io::Result<()> {
    let nodes: Vec<MVector> = result["nodes"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|n| MVector::new(n.as_array().into_iter().flatten().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect()))
        .collect();
    let edges: Vec<(usize, usize)> = result["edges"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|e| Some((e[0].as_u64()? as usize, e[1].as_u64()? as usize)))
        .collect();
    std::fs::write(path, svg::render(&nodes, &edges))
}

fn serve(host: &str, port: u16) -> ExitCode {
    let rt = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    rt.block_on(async {
        let listener = match tokio::net::TcpListener::bind((host, port)).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot bind {host}:{port}: {e}");
                return ExitCode::from(2);
            }
        };
        eprintln!("listening on http://{}", listener.local_addr().map_or_else(|_| format!("{host}:{port}"), |a| a.to_string()));
        match server::run(listener).await {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let env_tol = std::env::var("HOMSPACE_TOL").ok().and_then(|s| s.parse::<f64>().ok());
    if let Some(t) = cli.tol.or(env_tol) {
        if !(t.is_finite() && t > 0.0) {
            eprintln!("error: tolerance must be a positive number");
            return ExitCode::from(1);
        }
        tol::set_eps(t);
    }
    if let Cmd::Serve { port, host } = &cli.cmd {
        return serve(host, *port);
    }

    let out = request(&cli.cmd).and_then(|(route, req)| api::call(route, req));
    if let (Ok(result), Cmd::Tiling(TilingArgs { svg: Some(path), .. })) = (&out, &cli.cmd) {
        if let Err(e) = write_svg(path, result) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let code = match &out {
        Ok(_) => ExitCode::SUCCESS,
        Err(ApiError::BadRequest(_)) => ExitCode::from(1),
        Err(_) => ExitCode::from(2),
    };
    if cli.json {
        println!("{}", api::envelope(&out));
    } else {
        match &out {
            Ok(v) => print!("{}", text::render(v)),
            Err(e) => eprintln!("error [{}]: {}", e.code(), e.message()),
        }
    }
    code
}
