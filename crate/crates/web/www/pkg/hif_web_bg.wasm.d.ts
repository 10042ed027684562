/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_arctrace_free: (a: number, b: number) => void;
export const __wbg_areagrid_free: (a: number, b: number) => void;
export const __wbg_feederdemo_free: (a: number, b: number) => void;
export const arc_trace: (a: number, b: number, c: number) => [number, number, number];
export const arctrace_current: (a: number) => [number, number];
export const arctrace_fs: (a: number) => number;
export const arctrace_offsets_ms: (a: number) => [number, number];
export const arctrace_resistance: (a: number) => [number, number];
export const area_grid: (a: number, b: number, c: number) => [number, number, number];
export const areagrid_d: (a: number) => [number, number];
export const areagrid_pass: (a: number) => [number, number];
export const areagrid_pass_fraction: (a: number) => number;
export const areagrid_v: (a: number) => [number, number];
export const areagrid_values: (a: number) => [number, number];
export const feeder_demo: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const feederdemo_amp3: (a: number) => [number, number];
export const feederdemo_decided_at: (a: number) => number;
export const feederdemo_fault_current: (a: number) => [number, number];
export const feederdemo_gated_windows: (a: number) => number;
export const feederdemo_phase3_deg: (a: number) => [number, number];
export const feederdemo_verdict: (a: number) => number;
export const feederdemo_windows: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
