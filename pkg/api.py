from fastapi import FastAPI, HTTPException, Query

from core.errors import ConfigError, SimulationError
from core.experiments import data_rate_table
from core.params import derive
from core.rcs_link import normalized_rcs, rcs_regime
from core.sensing_rx import sense
from helpers.config_file import load_config
from helpers.constants import API_CONFIG
from helpers.logger import create_logger
from schemas import NoiseSpec, SenseEstimate, SenseRequest, TargetState

logger = create_logger(__name__)

app = FastAPI()


@app.post("/sense", response_model=SenseEstimate)
async def sense_target(request: SenseRequest):
    logger.info(f"Sense request: r0={request.r0}, v0={request.v0}, snr_db={request.snr_db}, "
                f"overrides={request.overrides}")
    try:
        overrides = [f"{key}={value}" for key, value in request.overrides.items()]
        system, _, _ = load_config(API_CONFIG, overrides)
        snr_db = float("inf") if request.snr_db is None else request.snr_db
        estimate = sense(TargetState(r0=request.r0, v0=request.v0), NoiseSpec(snr_db=snr_db, seed=request.seed), system)
    except ConfigError as e:
        logger.error(f"Rejected sense request: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except (SimulationError, ValueError) as e:
        logger.error(f"Sense request failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))

    logger.info(f"Sense estimate: r0_hat={estimate.r0_hat}, v0_hat={estimate.v0_hat}")
    return estimate


@app.get("/rates")
async def rates(r_max: float = Query(gt=0), a: float = Query(ge=1)):
    try:
        system, _, _ = load_config(API_CONFIG)
        row = data_rate_table([r_max], [a], system)[0]
        derived = derive(system.with_changes(r_max=r_max, a=a))
    except (SimulationError, ValueError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    return {"r_max": r_max, "a": a, "T_sym": derived.T_sym, "data_rate": row.value, "f_s": derived.f_s}


@app.get("/rcs")
async def rcs(x: float = Query(gt=0)):
    return {"x": x, "sigma_hat": normalized_rcs(x), "regime": rcs_regime(x)}
