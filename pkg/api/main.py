"""FastAPI application for the Hume workbench.

This module exposes the command-line dispatcher over HTTP: a command line is posted as an
argument list and the JSON report comes back, with rate limiting on every endpoint.
"""

import logging
from typing import Any, Optional

from fastapi import APIRouter, FastAPI, HTTPException, Request
from pydantic import BaseModel
from slowapi import Limiter, _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded
from slowapi.util import get_remote_address

from cli.dispatch import execute, parse_command
from cli.reports import to_payload
from common.errors import UsageError, WorkbenchError
from config.settings import settings

# Configure logging
logging.basicConfig(level=settings.log_level)
logger = logging.getLogger(__name__)

VERSION = "1.0.0"

# Initialize FastAPI app
app = FastAPI(
    title="Hume Workbench",
    description="Abstraction principles, finite models and definable sets over fields",
    version=VERSION
)
# Configure rate limiting
limiter = Limiter(key_func=get_remote_address)
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)


class RunRequest(BaseModel):
    """Request model: a command line without the program name."""
    argv: list[str]


class RunResult(BaseModel):
    """Response model: exit code plus report or error."""
    exit_code: int
    report: Optional[Any] = None
    error: Optional[dict[str, Any]] = None


# API router
api_router = APIRouter(prefix="/api")


@api_router.post("/run", response_model=RunResult)
@limiter.limit(f"{settings.rate_limit_calls}/minute")
async def run_command(request: Request, body: RunRequest):
    """Run one workbench command.

    Args:
        request: FastAPI request object
        body: Command line as a list of arguments

    Returns:
        RunResult: exit code 0 with the report, or 1 with the named domain error

    Raises:
        HTTPException: 400 on usage errors, 500 on unexpected failures
    """
    try:
        cmd = parse_command(body.argv)
        if cmd.verb == "serve":
            raise UsageError("serve is only available from the command line")
        report = execute(cmd)
        return RunResult(exit_code=0, report=to_payload(report))
    except UsageError as e:
        logger.error(f"Usage error: {e.message}")
        raise HTTPException(status_code=400, detail=e.to_json())
    except SystemExit:
        raise HTTPException(status_code=400, detail={"error": "usage_error", "message": "help requested"})
    except WorkbenchError as e:
        logger.error(f"{e.code}: {e.message}")
        return RunResult(exit_code=1, error=e.to_json())
    except Exception as e:
        logger.error(f"Error running {body.argv}: {e}")
        raise HTTPException(status_code=500, detail=str(e))

app.include_router(api_router)


@app.get("/health")
@limiter.limit(f"{settings.rate_limit_calls}/minute")
async def health_check(request: Request):
    """Health check endpoint."""
    return {"status": "healthy", "version": VERSION}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "api.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug_mode
    )
