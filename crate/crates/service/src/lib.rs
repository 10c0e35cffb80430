//! HTTP facade for the calculator.
//!
//! * `POST /api/eval` with `{"session": "...", "input": "..."}`
//! * `GET /api/tree?depth=N` with `0 <= N <= 6`
//! * `GET /api/health`
//! * anything else is served from the static directory
//!
//! All sessions share one engine, so its tree and memo tables are reused;
//! each session has its own variable bindings. Evaluations are serialised
//! through one lock because the engine is single-threaded.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use surreal_core::{Engine, EngineConfig, Genealogy, Session, Value};
use tower_http::services::ServeDir;

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
pub const MAX_TREE_DEPTH: u32 = 6;
/// Stack for evaluation threads; comparisons recurse deeply.
const STACK_BYTES: usize = 256 << 20;

#[derive(Clone, Debug)]
pub struct Config {
    pub engine: EngineConfig,
    pub max_generation: u32,
    /// Wall-clock budget per statement.
    pub budget: Option<Duration>,
    pub static_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            engine: EngineConfig::default(),
            max_generation: surreal_core::genealogy::DEFAULT_MAX_GENERATION,
            budget: Some(Duration::from_secs(60)),
            static_dir: None,
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct EvalRequest {
    pub session: String,
    pub input: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsDelta {
    pub ge_calls: u64,
    pub plus_evals: u64,
    pub times_evals: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResponse {
    pub ok: bool,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generation: Option<u32>,
    pub millis: f64,
    pub stats: StatsDelta,
}

impl EvalResponse {
    fn error(display: String) -> Self {
        EvalResponse {
            ok: false,
            display,
            name: None,
            form: None,
            generation: None,
            millis: 0.0,
            stats: StatsDelta::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub path: String,
    pub name: String,
    pub form: String,
    pub generation: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeResponse {
    pub ok: bool,
    pub depth: u32,
    /// `path<TAB>name<TAB>form` lines, in order.
    pub dump: String,
    pub nodes: Vec<TreeNode>,
}

#[derive(Debug, Serialize)]
struct ProtocolError {
    ok: bool,
    display: String,
}

struct Shared {
    engine: Engine,
    sessions: HashMap<String, Session>,
}

pub struct AppState {
    shared: Mutex<Shared>,
    tree: Arc<Genealogy>,
    budget: Option<Duration>,
}

impl AppState {
    pub fn new(config: &Config) -> Self {
        let tree = Arc::new(Genealogy::with_max_generation(config.max_generation));
        AppState {
            shared: Mutex::new(Shared {
                engine: Engine::with_tree(tree.clone(), config.engine.clone()),
                sessions: HashMap::new(),
            }),
            tree,
            budget: config.budget,
        }
    }

    /// Parses and runs one eval request body. Protocol errors are `Err`.
    pub fn eval(&self, body: &[u8]) -> Result<EvalResponse, String> {
        let req: EvalRequest =
            serde_json::from_slice(body).map_err(|e| format!("error: malformed request: {e}"))?;
        if req.session.is_empty() {
            return Err("error: session must not be empty".into());
        }
        if req.input.len() > MAX_INPUT_BYTES {
            return Err(format!("error: input exceeds {MAX_INPUT_BYTES} bytes"));
        }
        let mut guard = self.shared.lock().unwrap_or_else(|p| p.into_inner());
        let Shared { engine, sessions } = &mut *guard;
        let session = sessions
            .entry(req.session)
            .or_insert_with(|| Session::with_budget(self.budget));
        let before = engine.stats_snapshot();
        let start = Instant::now();
        let result = session.execute(engine, &req.input);
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let d = engine.stats_snapshot().since(&before);
        let stats = StatsDelta {
            ge_calls: d.ge_calls,
            plus_evals: d.plus_evals,
            times_evals: d.times_evals,
        };
        Ok(match result {
            Ok(reply) => {
                let node = match &reply.value {
                    Some(Value::Surreal(n)) => Some(n),
                    _ => None,
                };
                EvalResponse {
                    ok: true,
                    display: reply.display,
                    name: node.map(|n| n.name().to_string()),
                    form: node.map(|n| n.form().to_string()),
                    generation: node.map(|n| n.generation()),
                    millis,
                    stats,
                }
            }
            Err(e) => EvalResponse {
                millis,
                stats,
                ..EvalResponse::error(e.report())
            },
        })
    }

    pub fn tree(&self, depth: Option<&str>) -> Result<TreeResponse, String> {
        let depth = match depth {
            None => 0,
            Some(s) => s
                .parse::<u32>()
                .ok()
                .filter(|d| *d <= MAX_TREE_DEPTH)
                .ok_or_else(|| {
                    format!("error: depth must be an integer from 0 to {MAX_TREE_DEPTH}")
                })?,
        };
        let nodes = self
            .tree
            .in_order(depth)
            .map_err(|e| format!("error: {e}"))?;
        let dump = self.tree.dump(depth).map_err(|e| format!("error: {e}"))?;
        Ok(TreeResponse {
            ok: true,
            depth,
            dump,
            nodes: nodes
                .iter()
                .map(|n| TreeNode {
                    path: surreal_core::genealogy::path_string(&n.path()),
                    name: n.name().to_string(),
                    form: n.form().to_string(),
                    generation: n.generation(),
                })
                .collect(),
        })
    }
}

fn protocol_error(display: String) -> Response {
    (
        StatusCode::BAD_REQUEST,
        Json(ProtocolError { ok: false, display }),
    )
        .into_response()
}

async fn eval_handler(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let outcome = tokio::task::spawn_blocking(move || state.eval(&body)).await;
    match outcome {
        Ok(Ok(resp)) => Json(resp).into_response(),
        Ok(Err(msg)) => protocol_error(msg),
        Err(e) => (
            StatusCode::INTERNAL_SERVER_ERROR,
            Json(ProtocolError {
                ok: false,
                display: format!("error: evaluation failed: {e}"),
            }),
        )
            .into_response(),
    }
}

async fn tree_handler(
    State(state): State<Arc<AppState>>,
    Query(q): Query<HashMap<String, String>>,
) -> Response {
    match state.tree(q.get("depth").map(String::as_str)) {
        Ok(t) => Json(t).into_response(),
        Err(msg) => protocol_error(msg),
    }
}

async fn health_handler() -> Response {
    Json(serde_json::json!({ "ok": true })).into_response()
}

pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/eval", post(eval_handler))
        .route("/api/tree", get(tree_handler))
        .route("/api/health", get(health_handler))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves on `0.0.0.0:port` until the process ends.
pub fn serve(port: u16, config: Config) -> std::io::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .thread_stack_size(STACK_BYTES)
        .build()?;
    runtime.block_on(async move {
        let state = Arc::new(AppState::new(&config));
        let app = router(state, config.static_dir.clone());
        let addr = SocketAddr::from(([0, 0, 0, 0], port));
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, app).await
    })
}
