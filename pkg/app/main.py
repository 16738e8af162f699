from fastapi import FastAPI

from app.core.logging import configure_logging
from app.routers import semantics


configure_logging()

app = FastAPI(
    title="Fuzzy AFT Engine",
    version="0.1.0",
    description="Kripke-Kleene, well-founded and stable semantics of normal fuzzy logic programs"
)

# Register routers
app.include_router(semantics.router, prefix="/api")


@app.get("/health")
def health_check():
    return {"status": "ok"}
