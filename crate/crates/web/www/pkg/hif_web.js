/* @ts-self-types="./hif_web.d.ts" */

export class ArcTrace {
    static __wrap(ptr) {
        const obj = Object.create(ArcTrace.prototype);
        obj.__wbg_ptr = ptr;
        ArcTraceFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ArcTraceFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_arctrace_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    current() {
        const ret = wasm.arctrace_current(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    fs() {
        const ret = wasm.arctrace_fs(this.__wbg_ptr);
        return ret;
    }
    /**
     * Lag of the resistance peak behind each half-cycle's current zero.
     * @returns {Float64Array}
     */
    offsets_ms() {
        const ret = wasm.arctrace_offsets_ms(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    resistance() {
        const ret = wasm.arctrace_resistance(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) ArcTrace.prototype[Symbol.dispose] = ArcTrace.prototype.free;

export class AreaGrid {
    static __wrap(ptr) {
        const obj = Object.create(AreaGrid.prototype);
        obj.__wbg_ptr = ptr;
        AreaGridFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        AreaGridFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_areagrid_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    d() {
        const ret = wasm.areagrid_d(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Uint8Array}
     */
    pass() {
        const ret = wasm.areagrid_pass(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    pass_fraction() {
        const ret = wasm.areagrid_pass_fraction(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    v() {
        const ret = wasm.areagrid_v(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Row-major over `v` then `d`; NaN at undamped resonance.
     * @returns {Float64Array}
     */
    values() {
        const ret = wasm.areagrid_values(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) AreaGrid.prototype[Symbol.dispose] = AreaGrid.prototype.free;

export class FeederDemo {
    static __wrap(ptr) {
        const obj = Object.create(FeederDemo.prototype);
        obj.__wbg_ptr = ptr;
        FeederDemoFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        FeederDemoFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_feederdemo_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    amp3() {
        const ret = wasm.feederdemo_amp3(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Seconds after the settling span; NaN when undetermined.
     * @returns {number}
     */
    decided_at() {
        const ret = wasm.feederdemo_decided_at(this.__wbg_ptr);
        return ret;
    }
    /**
     * Last two cycles of `i_0f`.
     * @returns {Float64Array}
     */
    fault_current() {
        const ret = wasm.feederdemo_fault_current(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    gated_windows() {
        const ret = wasm.feederdemo_gated_windows(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * 3rd-harmonic phase of each feeder in the last window.
     * @returns {Float64Array}
     */
    phase3_deg() {
        const ret = wasm.feederdemo_phase3_deg(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * One-based feeder number, 0 when undetermined.
     * @returns {number}
     */
    verdict() {
        const ret = wasm.feederdemo_verdict(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    windows() {
        const ret = wasm.feederdemo_windows(this.__wbg_ptr);
        return ret >>> 0;
    }
}
if (Symbol.dispose) FeederDemo.prototype[Symbol.dispose] = FeederDemo.prototype.free;

/**
 * @param {number} p_loss
 * @param {number} tau
 * @param {number} r_series
 * @returns {ArcTrace}
 */
export function arc_trace(p_loss, tau, r_series) {
    const ret = wasm.arc_trace(p_loss, tau, r_series);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ArcTrace.__wrap(ret[0]);
}

/**
 * @param {number} c_n
 * @param {boolean} classic
 * @param {number} thr
 * @returns {AreaGrid}
 */
export function area_grid(c_n, classic, thr) {
    const ret = wasm.area_grid(c_n, classic, thr);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return AreaGrid.__wrap(ret[0]);
}

/**
 * @param {number} faulty
 * @param {number} v
 * @param {number} d
 * @param {number} p_loss
 * @param {number} tau
 * @param {number} thr
 * @returns {FeederDemo}
 */
export function feeder_demo(faulty, v, d, p_loss, tau, thr) {
    const ret = wasm.feeder_demo(faulty, v, d, p_loss, tau, thr);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return FeederDemo.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./hif_web_bg.js": import0,
    };
}

const ArcTraceFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_arctrace_free(ptr, 1));
const AreaGridFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_areagrid_free(ptr, 1));
const FeederDemoFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_feederdemo_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('hif_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
