use std::io::{self, Write};

use serde::Serialize;

use crate::input::{Item, Items};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    BudgetExhausted,
    Skipped,
    InputError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::BudgetExhausted => "budget-exhausted",
            Status::Skipped => "skipped",
            Status::InputError => "input-error",
        }
    }
}

/// Counts over one run plus every invariant violation found.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub budget_exhausted: usize,
    pub skipped: usize,
    pub input_errors: usize,
    pub violations: Vec<String>,
}

impl Summary {
    pub fn count(&mut self, status: Status) {
        self.total += 1;
        match status {
            Status::Ok => self.ok += 1,
            Status::BudgetExhausted => self.budget_exhausted += 1,
            Status::Skipped => self.skipped += 1,
            Status::InputError => self.input_errors += 1,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.input_errors > 0 {
            EXIT_INPUT
        } else if !self.violations.is_empty() {
            EXIT_VIOLATION
        } else if self.budget_exhausted > 0 {
            EXIT_BUDGET
        } else {
            EXIT_OK
        }
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{} graphs: {} ok, {} budget-exhausted, {} skipped, {} input errors, {} violations",
            self.total,
            self.ok,
            self.budget_exhausted,
            self.skipped,
            self.input_errors,
            self.violations.len()
        )];
        out.extend(self.violations.iter().map(|v| format!("VIOLATION {v}")));
        out
    }
}

pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;

    /// Minimum table column widths.
    fn widths() -> Vec<usize> {
        Self::header().iter().map(|h| h.len().max(6)).collect()
    }
}

pub fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Table,
    Json,
    Csv,
}

/// Streams rows as an aligned table, a JSON document
/// `{"records": [...], "summary": ...}` or CSV.
pub struct Emitter<'w> {
    out: &'w mut dyn Write,
    mode: Mode,
    rows: usize,
}

impl<'w> Emitter<'w> {
    pub fn new(out: &'w mut dyn Write, mode: Mode) -> Self {
        Emitter { out, mode, rows: 0 }
    }

    /// The underlying writer, for free-form output.
    pub fn raw(&mut self) -> &mut dyn Write {
        &mut *self.out
    }

    pub fn row<R: Row>(&mut self, r: &R) -> io::Result<()> {
        if self.rows == 0 {
            match self.mode {
                Mode::Table => {
                    let cells: Vec<String> = R::header()
                        .iter()
                        .zip(R::widths())
                        .map(|(h, w)| format!("{h:>w$}"))
                        .collect();
                    writeln!(self.out, "{}", cells.join(" "))?;
                }
                Mode::Csv => writeln!(self.out, "{}", R::header().join(","))?,
                Mode::Json => write!(self.out, "{{\"records\":[")?,
            }
        }
        match self.mode {
            Mode::Table => {
                let cells: Vec<String> = r
                    .cells()
                    .into_iter()
                    .zip(R::widths())
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                writeln!(self.out, "{}", cells.join(" "))?;
            }
            Mode::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(&mut *self.out);
                let cells = r
                    .cells()
                    .into_iter()
                    .map(|c| if c == "-" { String::new() } else { c });
                w.write_record(cells).map_err(io::Error::other)?;
                w.flush()?;
            }
            Mode::Json => {
                if self.rows > 0 {
                    write!(self.out, ",")?;
                }
                serde_json::to_writer(&mut *self.out, r).map_err(io::Error::other)?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    /// Closes the document; table mode prints `lines` after the rows.
    pub fn finish<S: Serialize>(self, summary: &S, lines: &[String]) -> io::Result<()> {
        match self.mode {
            Mode::Table => {
                for l in lines {
                    writeln!(self.out, "{l}")?;
                }
            }
            Mode::Csv => {}
            Mode::Json => {
                if self.rows == 0 {
                    write!(self.out, "{{\"records\":[")?;
                }
                write!(self.out, "],\"summary\":")?;
                serde_json::to_writer(&mut *self.out, summary).map_err(io::Error::other)?;
                writeln!(self.out, "}}")?;
            }
        }
        Ok(())
    }
}

/// Applies `work` to every item with a pool of `threads` workers and hands
/// results to `sink` in input order. `work` gets the solver thread count:
/// all threads when a batch holds one graph, otherwise one.
pub fn process<R: Send>(
    items: Items,
    threads: usize,
    work: impl Fn(Item, usize) -> R + Sync,
    mut sink: impl FnMut(R) -> io::Result<()>,
) -> io::Result<()> {
    let threads = threads.max(1);
    let mut items = items.peekable();
    if threads == 1 {
        for item in items {
            sink(work(item, 1))?;
        }
        return Ok(());
    }
    let batch = 64 * threads;
    while items.peek().is_some() {
        let chunk: Vec<Item> = items.by_ref().take(batch).collect();
        if chunk.len() == 1 {
            let item = chunk.into_iter().next().expect("one item");
            sink(work(item, threads))?;
            continue;
        }
        let slots: Vec<std::sync::Mutex<Option<Item>>> = chunk
            .into_iter()
            .map(|i| std::sync::Mutex::new(Some(i)))
            .collect();
        let results: Vec<std::sync::Mutex<Option<R>>> =
            slots.iter().map(|_| std::sync::Mutex::new(None)).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some(slot) = slots.get(i) else { break };
                    let item = slot
                        .lock()
                        .expect("no poisoned lock")
                        .take()
                        .expect("taken once");
                    *results[i].lock().expect("no poisoned lock") = Some(work(item, 1));
                });
            }
        });
        for r in results {
            sink(
                r.into_inner()
                    .expect("no poisoned lock")
                    .expect("every slot filled"),
            )?;
        }
    }
    Ok(())
}
