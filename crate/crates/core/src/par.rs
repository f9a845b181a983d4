//! Sequential or data-parallel mapping over a slice.
//!
//! With the `parallel` feature the work runs on rayon, either on the
//! global pool or on a dedicated pool of fixed size. Without it every
//! executor runs sequentially.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone, Default)]
pub struct Executor {
    kind: Kind,
}

#[derive(Clone)]
enum Kind {
    Sequential,
    #[cfg(feature = "parallel")]
    Global,
    #[cfg(feature = "parallel")]
    Pool(Arc<rayon::ThreadPool>),
}

impl Default for Kind {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Kind::Global;
        #[cfg(not(feature = "parallel"))]
        Kind::Sequential
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Executor({})", self.describe())
    }
}

impl Executor {
    pub fn sequential() -> Self {
        Executor { kind: Kind::Sequential }
    }

    /// Parallel on `workers` threads (`None`: rayon's default). Falls back
    /// to sequential when built without the `parallel` feature or when
    /// `workers == Some(1)`.
    pub fn parallel(workers: Option<usize>) -> Self {
        #[cfg(feature = "parallel")]
        {
            match workers {
                Some(1) => Executor::sequential(),
                None => Executor { kind: Kind::Global },
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool");
                    Executor { kind: Kind::Pool(Arc::new(pool)) }
                }
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = workers;
            Executor::sequential()
        }
    }

    pub fn is_parallel(&self) -> bool {
        !matches!(self.kind, Kind::Sequential)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Sequential => "sequential".into(),
            #[cfg(feature = "parallel")]
            Kind::Global => format!("parallel ({} threads)", rayon::current_num_threads()),
            #[cfg(feature = "parallel")]
            Kind::Pool(p) => format!("parallel ({} threads)", p.current_num_threads()),
        }
    }

    /// `items.iter().map(f)`, results in input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match &self.kind {
            Kind::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Kind::Global => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(feature = "parallel")]
            Kind::Pool(pool) => {
                use rayon::prelude::*;
                pool.install(|| items.par_iter().map(f).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Executor::sequential().map(&xs, |x| x * x);
        for exec in [Executor::parallel(None), Executor::parallel(Some(3))] {
            assert_eq!(exec.map(&xs, |x| x * x), seq);
        }
        assert!(!Executor::parallel(Some(1)).is_parallel());
    }
}
