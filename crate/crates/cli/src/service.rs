//! HTTP evaluation service.
//!
//! Stateless: every request evaluates against the shared immutable catalog.
//! Bound to the loopback interface; CORS admits loopback origins only.

use std::collections::HashMap;
use std::net::{Ipv4Addr, SocketAddr};
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;
use tiergov_core::engine::DepthWeights;
use tiergov_core::report::{emit_canonical, SCHEMA_VERSION};
use tiergov_core::{
    evaluate, parse_descriptor, scenarios, DeploymentDescriptor, EngineConfig, Framework,
    GovernanceDomain, KnowledgeBase, RiskLevel, Tier,
};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub struct AppState {
    pub kb: KnowledgeBase,
    pub config: EngineConfig,
}

pub fn router(state: Arc<AppState>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|origin: &HeaderValue, _| {
            is_loopback_origin(origin)
        }))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/evaluate", post(evaluate_handler))
        .route("/catalog/summary", get(summary_handler))
        .route("/scenarios", get(scenarios_handler))
        .route("/health", get(health_handler))
        .layer(cors)
        .with_state(state)
}

/// `http(s)://localhost`, `127.x.x.x` or `[::1]`, any port.
pub fn is_loopback_origin(origin: &HeaderValue) -> bool {
    let Ok(origin) = origin.to_str() else {
        return false;
    };
    let Some(rest) = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"))
    else {
        return false;
    };
    let host = if let Some(v6) = rest.strip_prefix('[') {
        match v6.split_once(']') {
            Some((h, tail)) if tail.is_empty() || valid_port(tail) => h,
            _ => return false,
        }
    } else {
        match rest.split_once(':') {
            Some((h, port)) if valid_port(&format!(":{port}")) => h,
            Some(_) => return false,
            None => rest,
        }
    };
    host.eq_ignore_ascii_case("localhost")
        || host
            .parse::<std::net::IpAddr>()
            .is_ok_and(|ip| ip.is_loopback())
}

fn valid_port(tail: &str) -> bool {
    tail.strip_prefix(':')
        .is_some_and(|p| !p.is_empty() && p.parse::<u16>().is_ok())
}

fn json_response<T: Serialize>(status: StatusCode, body: &T) -> Response {
    let value = serde_json::to_value(body).expect("response serializes");
    let mut bytes = serde_json::to_vec_pretty(&value).expect("value serializes");
    bytes.push(b'\n');
    (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

fn error(status: StatusCode, message: String) -> Response {
    json_response(status, &ErrorBody { error: message })
}

async fn evaluate_handler(
    State(state): State<Arc<AppState>>,
    Query(query): Query<HashMap<String, String>>,
    body: String,
) -> Response {
    let mut config = state.config;
    if let Some(w) = query.get("weights") {
        match w.parse::<DepthWeights>() {
            Ok(w) => config.weights = w,
            Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
        }
    }
    let descriptor = match parse_descriptor(&body) {
        Ok(d) => d,
        Err(e) if e.is_semantically_empty() => {
            return error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string())
        }
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    match evaluate(&state.kb, &descriptor, &config) {
        Ok(report) => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "application/json")],
            emit_canonical(&report),
        )
            .into_response(),
        Err(e) => {
            tracing::error!(system = %descriptor.system_name, "evaluation failed: {e}");
            error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
        }
    }
}

#[derive(Serialize)]
struct FrameworkEntry {
    code: Framework,
    name: &'static str,
    obligations: usize,
}

#[derive(Serialize)]
struct TierEntry {
    code: Tier,
    short: &'static str,
    label: &'static str,
}

#[derive(Serialize)]
struct DomainEntry {
    code: GovernanceDomain,
    name: &'static str,
}

#[derive(Serialize)]
struct ControlEntry<'a> {
    id: &'a str,
    name: &'a str,
    domain: GovernanceDomain,
    active_tiers: Vec<Tier>,
    obligations: usize,
}

#[derive(Serialize)]
struct ArtifactEntry<'a> {
    id: &'a str,
    name: &'a str,
    producing_tiers: Vec<Tier>,
    frameworks_served: usize,
}

#[derive(Serialize)]
struct Summary<'a> {
    catalog_version: &'a str,
    engine_version: &'a str,
    schema_version: &'a str,
    obligations: usize,
    controls: usize,
    artifacts: usize,
    chains: usize,
    frameworks: Vec<FrameworkEntry>,
    tiers: Vec<TierEntry>,
    domains: Vec<DomainEntry>,
    risk_levels: Vec<RiskLevel>,
    control_matrix: Vec<ControlEntry<'a>>,
    artifact_catalog: Vec<ArtifactEntry<'a>>,
}

async fn summary_handler(State(state): State<Arc<AppState>>) -> Response {
    let kb = &state.kb;
    let summary = Summary {
        catalog_version: kb.catalog_version(),
        engine_version: tiergov_core::ENGINE_VERSION,
        schema_version: SCHEMA_VERSION,
        obligations: kb.obligations().len(),
        controls: kb.controls().len(),
        artifacts: kb.artifacts().len(),
        chains: kb.chains().len(),
        frameworks: Framework::ALL
            .iter()
            .map(|&f| FrameworkEntry {
                code: f,
                name: f.display_name(),
                obligations: kb.obligations().iter().filter(|o| o.framework == f).count(),
            })
            .collect(),
        tiers: Tier::ALL
            .iter()
            .map(|&t| TierEntry {
                code: t,
                short: t.short(),
                label: t.label(),
            })
            .collect(),
        domains: GovernanceDomain::ALL
            .iter()
            .map(|&d| DomainEntry {
                code: d,
                name: d.name(),
            })
            .collect(),
        risk_levels: RiskLevel::ALL.to_vec(),
        control_matrix: kb
            .controls()
            .iter()
            .map(|c| ControlEntry {
                id: &c.id,
                name: &c.name,
                domain: c.domain,
                active_tiers: c.active_tiers.iter().copied().collect(),
                obligations: c.obligation_ids.len(),
            })
            .collect(),
        artifact_catalog: kb
            .artifacts()
            .iter()
            .map(|a| ArtifactEntry {
                id: &a.id,
                name: &a.name,
                producing_tiers: a.producing_tiers.iter().copied().collect(),
                frameworks_served: a.frameworks_served.len(),
            })
            .collect(),
    };
    json_response(StatusCode::OK, &summary)
}

#[derive(Serialize)]
struct ScenarioEntry {
    slug: &'static str,
    system_name: String,
    descriptor: DeploymentDescriptor,
    yaml: &'static str,
}

async fn scenarios_handler() -> Response {
    let entries: Vec<ScenarioEntry> = scenarios::BUNDLED
        .iter()
        .map(|(slug, yaml)| {
            let descriptor = parse_descriptor(yaml).expect("bundled scenario parses");
            ScenarioEntry {
                slug,
                system_name: descriptor.system_name.clone(),
                descriptor,
                yaml,
            }
        })
        .collect();
    json_response(StatusCode::OK, &entries)
}

#[derive(Serialize)]
struct Health<'a> {
    status: &'a str,
    engine_version: &'a str,
    catalog_version: &'a str,
}

async fn health_handler(State(state): State<Arc<AppState>>) -> Response {
    json_response(
        StatusCode::OK,
        &Health {
            status: "ok",
            engine_version: tiergov_core::ENGINE_VERSION,
            catalog_version: state.kb.catalog_version(),
        },
    )
}

/// Serves until Ctrl-C.
pub async fn serve(state: Arc<AppState>, port: u16) -> anyhow::Result<()> {
    let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
