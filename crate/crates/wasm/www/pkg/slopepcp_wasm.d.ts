/* tslint:disable */
/* eslint-disable */

/**
 * One loaded dataset.
 */
export class Demo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Parses CSV text; a `label` column is optional.
     */
    static fromCsv(text: string): Demo;
    /**
     * Generates a built-in preset.
     */
    static fromPreset(name: string): Demo;
    /**
     * Computes the metrics report as JSON.
     */
    metricsJson(p: number, h: number, width: number, height: number): string;
    /**
     * Renders to an SVG document.
     */
    renderSvg(p: number, h: number, width: number, height: number): string;
    /**
     * The dataset as CSV.
     */
    toCsv(): string;
    readonly dimensions: number;
    readonly records: number;
}

/**
 * Names of the built-in presets, comma-separated.
 */
export function presetNames(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_dimensions: (a: number) => number;
    readonly demo_fromCsv: (a: number, b: number) => [number, number, number];
    readonly demo_fromPreset: (a: number, b: number) => [number, number, number];
    readonly demo_metricsJson: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly demo_records: (a: number) => number;
    readonly demo_renderSvg: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly demo_toCsv: (a: number) => [number, number];
    readonly presetNames: () => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
