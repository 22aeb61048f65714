//! Scoped-thread fan-out with results independent of the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// The result of the least branch index for which `f` succeeds; the same
/// for any `threads`. Branches above an already successful one are skipped.
pub fn first_branch<T: Send>(branches: usize, threads: usize, f: impl Fn(usize) -> Option<T> + Sync) -> Option<T> {
    if threads <= 1 || branches <= 1 {
        return (0..branches).find_map(f);
    }
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Vec<(usize, T)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads.min(branches) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= branches || i > best.load(Ordering::Relaxed) {
                    break;
                }
                if let Some(t) = f(i) {
                    best.fetch_min(i, Ordering::Relaxed);
                    found.lock().unwrap().push((i, t));
                }
            });
        }
    });
    found.into_inner().unwrap().into_iter().min_by_key(|(i, _)| *i).map(|(_, t)| t)
}

/// `items.iter().map(f)` in input order, spread over `threads`.
pub fn map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("every index visited")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_branch_wins_regardless_of_threads() {
        let f = |i: usize| (i % 7 == 3 || i == 40).then_some(i * 10);
        for t in [1, 2, 8] {
            assert_eq!(first_branch(100, t, f), Some(30));
            assert_eq!(first_branch(3, t, f), None);
        }
        assert_eq!(first_branch(0, 4, f), None);
    }

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..50).collect();
        assert_eq!(map(&xs, 4, |x| x * x), xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
