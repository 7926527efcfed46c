//! Tiny index-queue worker pool for parameter sweeps. Workers pull task
//! indices from a shared counter; a single collector reassembles results
//! in grid order, so the output never depends on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

pub fn run_indexed<T, F>(jobs: Option<usize>, n_tasks: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let default_jobs = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let jobs = jobs.unwrap_or(default_jobs).clamp(1, n_tasks.max(1));
    if jobs <= 1 || n_tasks <= 1 {
        return (0..n_tasks).map(task).collect();
    }

    let next = AtomicUsize::new(0);
    let (sender, receiver) = mpsc::channel();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let sender = sender.clone();
            let next = &next;
            let task = &task;
            scope.spawn(move || loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= n_tasks {
                    break;
                }
                if sender.send((index, task(index))).is_err() {
                    break;
                }
            });
        }
    });
    drop(sender);

    let mut slots: Vec<Option<T>> = (0..n_tasks).map(|_| None).collect();
    for (index, value) in receiver {
        slots[index] = Some(value);
    }
    slots
        .into_iter()
        .map(|slot| slot.expect("every task index is produced exactly once"))
        .collect()
}
