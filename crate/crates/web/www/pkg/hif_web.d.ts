/* tslint:disable */
/* eslint-disable */

export class ArcTrace {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    current(): Float64Array;
    fs(): number;
    /**
     * Lag of the resistance peak behind each half-cycle's current zero.
     */
    offsets_ms(): Float64Array;
    resistance(): Float64Array;
}

export class AreaGrid {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    d(): Float64Array;
    pass(): Uint8Array;
    pass_fraction(): number;
    v(): Float64Array;
    /**
     * Row-major over `v` then `d`; NaN at undamped resonance.
     */
    values(): Float64Array;
}

export class FeederDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    amp3(): Float64Array;
    /**
     * Seconds after the settling span; NaN when undetermined.
     */
    decided_at(): number;
    /**
     * Last two cycles of `i_0f`.
     */
    fault_current(): Float64Array;
    gated_windows(): number;
    /**
     * 3rd-harmonic phase of each feeder in the last window.
     */
    phase3_deg(): Float64Array;
    /**
     * One-based feeder number, 0 when undetermined.
     */
    verdict(): number;
    windows(): number;
}

export function arc_trace(p_loss: number, tau: number, r_series: number): ArcTrace;

export function area_grid(c_n: number, classic: boolean, thr: number): AreaGrid;

export function feeder_demo(faulty: number, v: number, d: number, p_loss: number, tau: number, thr: number): FeederDemo;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_arctrace_free: (a: number, b: number) => void;
    readonly __wbg_areagrid_free: (a: number, b: number) => void;
    readonly __wbg_feederdemo_free: (a: number, b: number) => void;
    readonly arc_trace: (a: number, b: number, c: number) => [number, number, number];
    readonly arctrace_current: (a: number) => [number, number];
    readonly arctrace_fs: (a: number) => number;
    readonly arctrace_offsets_ms: (a: number) => [number, number];
    readonly arctrace_resistance: (a: number) => [number, number];
    readonly area_grid: (a: number, b: number, c: number) => [number, number, number];
    readonly areagrid_d: (a: number) => [number, number];
    readonly areagrid_pass: (a: number) => [number, number];
    readonly areagrid_pass_fraction: (a: number) => number;
    readonly areagrid_v: (a: number) => [number, number];
    readonly areagrid_values: (a: number) => [number, number];
    readonly feeder_demo: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly feederdemo_amp3: (a: number) => [number, number];
    readonly feederdemo_decided_at: (a: number) => number;
    readonly feederdemo_fault_current: (a: number) => [number, number];
    readonly feederdemo_gated_windows: (a: number) => number;
    readonly feederdemo_phase3_deg: (a: number) => [number, number];
    readonly feederdemo_verdict: (a: number) => number;
    readonly feederdemo_windows: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
