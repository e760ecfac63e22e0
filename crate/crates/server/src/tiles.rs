//! PNG tiles with strong ETags and a bounded in-memory cache.

use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use axum::body::Body;
use axum::extract::{OriginalUri, Path, Query as QueryExtract, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::Response;
use bubbledyn_core::{MapParams, DEFAULT_RENDER_BUDGET};
use bubbledyn_render::{
    attractors_for, render_dynamical_tile, render_parameter_tile, Plane, RenderError, RenderStyle,
    TileSpec,
};
use lru::LruCache;
use sha2::{Digest, Sha256};

use crate::error::ApiError;
use crate::query::{budget, lambda, Query};

pub const CACHE_CAPACITY: usize = 512;
pub const MAX_TILE_BUDGET: usize = 100_000;

#[derive(Debug)]
pub struct Tile {
    pub png: Vec<u8>,
    pub etag: String,
}

/// Shared tile cache. Entries are content-addressed by URL and never
/// replaced, so a hit always returns the bytes a fresh render would.
pub struct TileCache {
    inner: Mutex<LruCache<String, Arc<Tile>>>,
}

impl TileCache {
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).unwrap();
        TileCache {
            inner: Mutex::new(LruCache::new(cap)),
        }
    }

    pub fn get(&self, key: &str) -> Option<Arc<Tile>> {
        self.inner.lock().unwrap().get(key).cloned()
    }

    /// Keeps the first tile stored under `key`.
    pub fn insert(&self, key: String, tile: Arc<Tile>) -> Arc<Tile> {
        self.inner
            .lock()
            .unwrap()
            .get_or_insert(key, || tile)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct AppState {
    pub cache: TileCache,
    pub style: RenderStyle,
}

impl Default for AppState {
    fn default() -> Self {
        AppState {
            cache: TileCache::new(CACHE_CAPACITY),
            style: RenderStyle::default(),
        }
    }
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, ApiError> {
    s.parse()
        .map_err(|_| ApiError::bad_request(format!("bad {what}: {s:?}")))
}

fn parse_spec(
    (plane, n, zoom, tx, ty): (String, String, String, String, String),
    q: &Query,
) -> Result<TileSpec, ApiError> {
    let ty = ty
        .strip_suffix(".png")
        .ok_or_else(|| ApiError::not_found("tiles are served as .png"))?;
    let plane = Plane::from_token(&plane)
        .ok_or_else(|| ApiError::bad_request(format!("unknown plane {plane:?}")))?;
    let n: u32 = number(&n, "degree")?;
    let lambda = match plane {
        Plane::Parameter => None,
        Plane::Dynamical => Some(lambda(q).map_err(|e| ApiError::bad_request(e.detail))?),
    };
    let spec = TileSpec {
        plane,
        n,
        lambda,
        zoom: number(&zoom, "zoom")?,
        tx: number(&tx, "tx")?,
        ty: number(ty, "ty")?,
        budget: budget(q, DEFAULT_RENDER_BUDGET, MAX_TILE_BUDGET)
            .map_err(|e| ApiError::bad_request(e.detail))?,
    };
    match spec.validate() {
        Err(RenderError::TileOutOfRange) => return Err(ApiError::not_found("tile outside the grid")),
        Err(e) => return Err(ApiError::bad_request(e.to_string())),
        Ok(()) => {}
    }
    if let Some(l) = lambda {
        MapParams::new(n, l)?;
    } else if n < 2 {
        return Err(bubbledyn_core::Error::InvalidDegree(n).into());
    }
    Ok(spec)
}

fn render(spec: &TileSpec, style: &RenderStyle) -> Result<Tile, RenderError> {
    let frame = match spec.plane {
        Plane::Parameter => render_parameter_tile(spec, style)?,
        Plane::Dynamical => {
            let params = MapParams::new(spec.n, spec.lambda.ok_or(RenderError::MissingLambda)?)?;
            render_dynamical_tile(spec, style, &attractors_for(&params))?
        }
    };
    let png = frame.encode_png()?;
    let etag = format!("\"{}\"", hex::encode(Sha256::digest(&png)));
    Ok(Tile { png, etag })
}

fn etag_matches(headers: &HeaderMap, etag: &str) -> bool {
    headers
        .get_all(header::IF_NONE_MATCH)
        .iter()
        .filter_map(|v| v.to_str().ok())
        .flat_map(|v| v.split(','))
        .map(str::trim)
        .any(|t| t == "*" || t == etag || t.strip_prefix("W/") == Some(etag))
}

fn tile_response(tile: &Tile, headers: &HeaderMap) -> Response {
    let builder = Response::builder()
        .header(header::CONTENT_TYPE, HeaderValue::from_static("image/png"))
        .header(header::ETAG, &tile.etag)
        .header(header::CACHE_CONTROL, "public, max-age=86400");
    if etag_matches(headers, &tile.etag) {
        builder
            .status(StatusCode::NOT_MODIFIED)
            .body(Body::empty())
            .unwrap()
    } else {
        builder
            .status(StatusCode::OK)
            .body(Body::from(tile.png.clone()))
            .unwrap()
    }
}

pub async fn tile_handler(
    State(state): State<Arc<AppState>>,
    OriginalUri(uri): OriginalUri,
    Path(segments): Path<(String, String, String, String, String)>,
    QueryExtract(q): QueryExtract<Query>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let key = uri.to_string();
    if let Some(tile) = state.cache.get(&key) {
        return Ok(tile_response(&tile, &headers));
    }
    let spec = parse_spec(segments, &q)?;
    let worker = state.clone();
    let tile = tokio::task::spawn_blocking(move || render(&spec, &worker.style))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(|e| ApiError::internal(e.to_string()))?;
    let tile = state.cache.insert(key, Arc::new(tile));
    Ok(tile_response(&tile, &headers))
}
