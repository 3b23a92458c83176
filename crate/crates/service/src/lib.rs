//! HTTP facade over datasets, rendering and metrics.
//!
//! | method | path        | body                  | success                       |
//! |--------|-------------|-----------------------|-------------------------------|
//! | GET    | `/datasets` |                       | 200, dataset list             |
//! | POST   | `/datasets` | CSV text              | 201, dataset summary          |
//! | POST   | `/render`   | [`RenderRequest`] JSON | 200, SVG (PNG/PGM via Accept) |
//! | POST   | `/metrics`  | [`RenderRequest`] JSON | 200, metrics report JSON      |
//!
//! Errors are JSON `{"schema", "error", "fields"}` with status 400 (bad CSV),
//! 404 (unknown dataset), 413 (upload over the size cap) or 422 (invalid
//! configuration or axis view). Every render response carries the
//! validated configuration in the `X-Config-Echo` header.
//!
//! There is no authentication; CORS is open so a locally served page can
//! call the API.

mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderMap, HeaderName, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Json;
use serde::{Deserialize, Serialize};
use slopepcp::pipeline::{metrics_document, render_document, AxisView};
use slopepcp::render::{ImageFormat, PlotConfig};
use slopepcp::{Error, FieldError};
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use axum::Router;
pub use store::{DatasetInfo, DatasetStore};

/// Identifier of the request and response document layouts.
pub const API_SCHEMA: &str = "slopepcp.api/1";

pub const CONFIG_ECHO_HEADER: &str = "x-config-echo";

pub const DEFAULT_MAX_UPLOAD: usize = 10 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ServiceOptions {
    /// Directory where uploads are spooled and reloaded from.
    pub data_dir: Option<PathBuf>,
    pub max_upload_bytes: usize,
    /// Static files served under `/`.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceOptions {
    fn default() -> Self {
        Self { data_dir: None, max_upload_bytes: DEFAULT_MAX_UPLOAD, static_dir: None }
    }
}

/// Body of `/render` and `/metrics`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    pub dataset_id: String,
    #[serde(default)]
    pub config: PlotConfig,
    #[serde(default)]
    pub axis_order: Vec<usize>,
    #[serde(default)]
    pub flips: Vec<usize>,
}

impl RenderRequest {
    pub fn view(&self) -> AxisView {
        AxisView { axis_order: self.axis_order.clone(), flips: self.flips.clone() }
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    schema: &'static str,
    error: String,
    fields: Vec<FieldError>,
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    message: String,
    fields: Vec<FieldError>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self { status, message: message.into(), fields: Vec::new() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::InvalidConfig(fields) => Self { status: StatusCode::UNPROCESSABLE_ENTITY, message, fields },
            Error::InvalidPermutation(_) => Self {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                fields: vec![FieldError::new("axis_order", &message)],
                message,
            },
            Error::AxisOutOfRange { .. } => Self {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                fields: vec![FieldError::new("flips", &message)],
                message,
            },
            Error::Parse { row, column, .. } => Self {
                status: StatusCode::BAD_REQUEST,
                fields: vec![FieldError::new(format!("row {row}, column {column}"), &message)],
                message,
            },
            Error::Structure(_) | Error::Dimensionality(_) => Self::new(StatusCode::BAD_REQUEST, message),
            Error::InvalidGeometry(_) | Error::Region(_) | Error::MissingLabels => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, message)
            }
            Error::Preset(_) | Error::Io { .. } | Error::Encode(_) => {
                Self::new(StatusCode::INTERNAL_SERVER_ERROR, message)
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { schema: API_SCHEMA, error: self.message, fields: self.fields };
        (self.status, Json(body)).into_response()
    }
}

type AppState = Arc<Inner>;

struct Inner {
    store: DatasetStore,
}

/// Builds the router with a fresh store.
pub fn router(options: &ServiceOptions) -> slopepcp::Result<Router> {
    let state = Arc::new(Inner { store: DatasetStore::new(options.data_dir.clone())? });
    let cors = CorsLayer::permissive().expose_headers([HeaderName::from_static(CONFIG_ECHO_HEADER)]);
    let mut app = Router::new()
        .route(
            "/datasets",
            get(list_datasets).post(upload_dataset).layer(DefaultBodyLimit::max(options.max_upload_bytes)),
        )
        .route("/render", post(render))
        .route("/metrics", post(metrics));
    if let Some(dir) = &options.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    Ok(app.layer(cors).with_state(state))
}

/// Binds `addr` and serves until the process exits.
pub async fn serve(addr: SocketAddr, options: ServiceOptions) -> std::io::Result<()> {
    let app = router(&options).map_err(std::io::Error::other)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    serve_on(listener, app).await
}

/// Serves `app` on an already bound listener.
pub async fn serve_on(listener: tokio::net::TcpListener, app: Router) -> std::io::Result<()> {
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, app).await
}

#[derive(Serialize)]
struct DatasetList {
    schema: &'static str,
    datasets: Vec<DatasetInfo>,
}

async fn list_datasets(State(state): State<AppState>) -> Json<DatasetList> {
    Json(DatasetList { schema: API_SCHEMA, datasets: state.store.list() })
}

#[derive(Serialize)]
struct Created {
    schema: &'static str,
    #[serde(flatten)]
    dataset: DatasetInfo,
}

async fn upload_dataset(State(state): State<AppState>, headers: HeaderMap, body: Bytes) -> Result<Response, ApiError> {
    let name = headers.get("x-dataset-name").and_then(|v| v.to_str().ok()).map(str::to_string);
    let info = tokio::task::spawn_blocking(move || state.store.insert_csv(&body, name))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok((StatusCode::CREATED, Json(Created { schema: API_SCHEMA, dataset: info })).into_response())
}

fn parse_request(body: &[u8]) -> Result<RenderRequest, ApiError> {
    serde_json::from_slice(body).map_err(|e| {
        let status =
            if e.is_syntax() || e.is_eof() { StatusCode::BAD_REQUEST } else { StatusCode::UNPROCESSABLE_ENTITY };
        ApiError::new(status, format!("request body: {e}"))
    })
}

/// Picks the output format from an `Accept` header; SVG unless a raster
/// type is asked for.
pub fn negotiate(headers: &HeaderMap) -> ImageFormat {
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok()).unwrap_or("");
    if accept.contains(ImageFormat::Png.mime()) {
        ImageFormat::Png
    } else if accept.contains(ImageFormat::Pgm.mime()) {
        ImageFormat::Pgm
    } else {
        ImageFormat::Svg
    }
}

fn config_echo(config: &PlotConfig) -> HeaderValue {
    HeaderValue::from_str(&serde_json::to_string(config).expect("config serializes")).expect("JSON is ASCII")
}

async fn render(State(state): State<AppState>, headers: HeaderMap, body: Bytes) -> Result<Response, ApiError> {
    let req = parse_request(&body)?;
    let data = state
        .store
        .get(&req.dataset_id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown dataset {:?}", req.dataset_id)))?;
    req.config.validate()?;
    let format = negotiate(&headers);
    let echo = config_echo(&req.config);
    let bytes = tokio::task::spawn_blocking(move || render_document(&data, &req.config, &req.view(), format))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok((
        [
            (header::CONTENT_TYPE, HeaderValue::from_static(format.mime())),
            (HeaderName::from_static(CONFIG_ECHO_HEADER), echo),
        ],
        bytes,
    )
        .into_response())
}

async fn metrics(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req = parse_request(&body)?;
    let data = state
        .store
        .get(&req.dataset_id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown dataset {:?}", req.dataset_id)))?;
    req.config.validate()?;
    let echo = config_echo(&req.config);
    let report = tokio::task::spawn_blocking(move || metrics_document(&data, &req.config, &req.view()))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok((
        [
            (header::CONTENT_TYPE, HeaderValue::from_static("application/json")),
            (HeaderName::from_static(CONFIG_ECHO_HEADER), echo),
        ],
        report.to_json(),
    )
        .into_response())
}
