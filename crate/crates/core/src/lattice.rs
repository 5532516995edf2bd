//! Images, 2-D ↔ 1-D scans, block tiling and lane/diagonal rotations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 8-bit grayscale raster, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::Dimension(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        GrayImage {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    /// Builds an image from equal-length rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut pixels = Vec::with_capacity(width * height);
        for row in rows {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::Dimension("ragged rows".into()));
            }
            pixels.extend_from_slice(row);
        }
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    pub fn same_size(&self, other: &GrayImage) -> Result<()> {
        if self.width == other.width && self.height == other.height {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "image sizes differ: {}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )))
        }
    }
}

/// 2-D to 1-D traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanPattern {
    Raster,
    Zigzag,
}

impl ScanPattern {
    pub fn name(self) -> &'static str {
        match self {
            ScanPattern::Raster => "raster",
            ScanPattern::Zigzag => "zigzag",
        }
    }
}

impl fmt::Display for ScanPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanPattern {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "raster" => Ok(ScanPattern::Raster),
            "zigzag" => Ok(ScanPattern::Zigzag),
            other => Err(format!("unknown scan pattern `{other}`")),
        }
    }
}

/// A scanned image: the 1-D signal plus what is needed to fold it back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSignal {
    pub bytes: Vec<u8>,
    pub width: usize,
    pub height: usize,
    pub pattern: ScanPattern,
}

impl ScanSignal {
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }
}

/// Row-major pixel index visited at each scan position.
///
/// Zigzag walks the anti-diagonals `row + col = d`, starting at (0,0) and
/// stepping east first, then alternating down-left and up-right sweeps (the
/// JPEG order generalised to any rectangle).
pub fn scan_order(width: usize, height: usize, pattern: ScanPattern) -> Vec<usize> {
    match pattern {
        ScanPattern::Raster => (0..width * height).collect(),
        ScanPattern::Zigzag => {
            let mut order = Vec::with_capacity(width * height);
            if width == 0 || height == 0 {
                return order;
            }
            for d in 0..width + height - 1 {
                let row_lo = d.saturating_sub(width - 1);
                let row_hi = d.min(height - 1);
                if d % 2 == 1 {
                    order.extend((row_lo..=row_hi).map(|r| r * width + (d - r)));
                } else {
                    order.extend((row_lo..=row_hi).rev().map(|r| r * width + (d - r)));
                }
            }
            order
        }
    }
}

pub fn scan(img: &GrayImage, pattern: ScanPattern) -> ScanSignal {
    let bytes = scan_order(img.width, img.height, pattern)
        .into_iter()
        .map(|i| img.pixels[i])
        .collect();
    ScanSignal {
        bytes,
        width: img.width,
        height: img.height,
        pattern,
    }
}

pub fn unscan(
    bytes: &[u8],
    width: usize,
    height: usize,
    pattern: ScanPattern,
) -> Result<GrayImage> {
    if bytes.len() != width * height {
        return Err(Error::Dimension(format!(
            "signal of length {} cannot fill a {width}x{height} image",
            bytes.len()
        )));
    }
    let mut pixels = vec![0u8; bytes.len()];
    for (&pos, &b) in scan_order(width, height, pattern).iter().zip(bytes) {
        pixels[pos] = b;
    }
    GrayImage::new(width, height, pixels)
}

/// Folds a signal back using the geometry it carries.
pub fn unscan_signal(sig: &ScanSignal) -> Result<GrayImage> {
    unscan(&sig.bytes, sig.width, sig.height, sig.pattern)
}

/// An image cut into square tiles, stored in row-major grid order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrid {
    pub block: usize,
    pub grid_rows: usize,
    pub grid_cols: usize,
    /// Each tile is `block * block` pixels, row-major.
    pub blocks: Vec<Vec<u8>>,
}

pub fn split_blocks(img: &GrayImage, block: usize) -> Result<BlockGrid> {
    if block == 0 || !img.width.is_multiple_of(block) || !img.height.is_multiple_of(block) {
        return Err(Error::Dimension(format!(
            "{}x{} image is not divisible into {block}x{block} blocks",
            img.width, img.height
        )));
    }
    let grid_rows = img.height / block;
    let grid_cols = img.width / block;
    let mut blocks = Vec::with_capacity(grid_rows * grid_cols);
    for gr in 0..grid_rows {
        for gc in 0..grid_cols {
            let mut tile = Vec::with_capacity(block * block);
            for r in 0..block {
                let start = (gr * block + r) * img.width + gc * block;
                tile.extend_from_slice(&img.pixels[start..start + block]);
            }
            blocks.push(tile);
        }
    }
    Ok(BlockGrid {
        block,
        grid_rows,
        grid_cols,
        blocks,
    })
}

pub fn merge_blocks(grid: &BlockGrid) -> Result<GrayImage> {
    let b = grid.block;
    if grid.blocks.len() != grid.grid_rows * grid.grid_cols
        || grid.blocks.iter().any(|t| t.len() != b * b)
    {
        return Err(Error::Dimension("block grid is inconsistent".into()));
    }
    let width = grid.grid_cols * b;
    let mut pixels = vec![0u8; width * grid.grid_rows * b];
    for (idx, tile) in grid.blocks.iter().enumerate() {
        let (gr, gc) = (idx / grid.grid_cols, idx % grid.grid_cols);
        for r in 0..b {
            let start = (gr * b + r) * width + gc * b;
            pixels[start..start + b].copy_from_slice(&tile[r * b..(r + 1) * b]);
        }
    }
    GrayImage::new(width, grid.grid_rows * b, pixels)
}

/// Rotation sense. `Forward` is right for rows, down for columns and toward
/// larger row index along a diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lane {
    Row(usize),
    Col(usize),
}

/// Diagonal family. `Main` diagonals run top-left to bottom-right; index `k`
/// selects the cells with `col - row = (n - 1) - k`, so `k = 0` is the
/// top-right corner cell. `Anti` diagonals run top-right to bottom-left with
/// `row + col = k`, so `k = 0` is the top-left corner cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Main,
    Anti,
}

/// Dense row-major 2-D array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Grid<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} grid needs {} cells, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Grid { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Grid { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.data[row * self.cols + col] = value;
    }

    /// Circular shift of one row or column by `amount` (mod its length).
    pub fn rotate_lane(&mut self, lane: Lane, direction: Direction, amount: usize) -> Result<()> {
        match lane {
            Lane::Row(i) => {
                if i >= self.rows {
                    return Err(Error::Dimension(format!("row {i} out of range")));
                }
                let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
                let k = amount % self.cols.max(1);
                match direction {
                    Direction::Forward => row.rotate_right(k),
                    Direction::Backward => row.rotate_left(k),
                }
            }
            Lane::Col(j) => {
                if j >= self.cols {
                    return Err(Error::Dimension(format!("column {j} out of range")));
                }
                let cells: Vec<usize> = (0..self.rows).map(|i| i * self.cols + j).collect();
                self.rotate_cells(&cells, direction, amount);
            }
        }
        Ok(())
    }

    /// Cells of diagonal `k` of a square grid, ordered by increasing row.
    pub fn diagonal_cells(&self, k: usize, orientation: Orientation) -> Result<Vec<usize>> {
        let n = self.rows;
        if self.cols != n {
            return Err(Error::Dimension(format!(
                "diagonals need a square grid, got {}x{}",
                self.rows, self.cols
            )));
        }
        if n == 0 || k > 2 * n - 2 {
            return Err(Error::Dimension(format!(
                "diagonal {k} out of range for a {n}x{n} grid"
            )));
        }
        Ok(diagonal_cells(n, k, orientation))
    }

    /// Circular shift of the cells of diagonal `k` by `amount` (mod its length).
    pub fn rotate_diagonal(
        &mut self,
        k: usize,
        orientation: Orientation,
        direction: Direction,
        amount: usize,
    ) -> Result<()> {
        let cells = self.diagonal_cells(k, orientation)?;
        self.rotate_cells(&cells, direction, amount);
        Ok(())
    }

    fn rotate_cells(&mut self, cells: &[usize], direction: Direction, amount: usize) {
        let len = cells.len();
        if len < 2 {
            return;
        }
        let mut values: Vec<T> = cells.iter().map(|&c| self.data[c]).collect();
        match direction {
            Direction::Forward => values.rotate_right(amount % len),
            Direction::Backward => values.rotate_left(amount % len),
        }
        for (&c, v) in cells.iter().zip(values) {
            self.data[c] = v;
        }
    }
}

/// Row-major cell indices of diagonal `k` in an `n × n` grid, by increasing row.
pub(crate) fn diagonal_cells(n: usize, k: usize, orientation: Orientation) -> Vec<usize> {
    let last = n - 1;
    match orientation {
        Orientation::Main => {
            // col - row = last - k
            let (row0, col0) = if k <= last {
                (0, last - k)
            } else {
                (k - last, 0)
            };
            let len = n - row0.max(col0);
            (0..len).map(|t| (row0 + t) * n + col0 + t).collect()
        }
        Orientation::Anti => {
            // row + col = k
            let row0 = k.saturating_sub(last);
            let row1 = k.min(last);
            (row0..=row1).map(|r| r * n + (k - r)).collect()
        }
    }
}
