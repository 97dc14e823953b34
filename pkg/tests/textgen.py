"""English-like text generation for cryptanalysis tests."""

import random

from brauer_kit.coincidence import ENGLISH_FREQUENCIES

LETTERS = sorted(ENGLISH_FREQUENCIES)
WEIGHTS = [ENGLISH_FREQUENCIES[ch] for ch in LETTERS]

# Plain prose, letters only, for deterministic statistics tests.
SAMPLE_TEXT = (
    "THEQUICKBROWNFOXJUMPSOVERTHELAZYDOGWHILETHEOLDCLOCKONTHEMANTEL"
    "KEEPSSTEADYTIMEANDTHERIVERBELOWTHEBRIDGECARRIESSMALLBOATSTOWARD"
    "THEHARBOURWHEREFISHERMENMENDTHEIRNETSANDTALKABOUTTHEWEATHERTHE"
    "MARKETOPENSEARLYEVERYMORNINGWITHCARTSOFBREADANDFRUITANDTHESOUND"
    "OFVOICESFILLSTHENARROWSTREETSUNTILTHEEVENINGBELLSENDSEVERYONE"
    "HOMEAGAINTOSUPPERANDTOSLEEP"
)


def sample_english(rng: random.Random, length: int) -> str:
    """Independent draws from the English letter distribution."""
    return "".join(rng.choices(LETTERS, weights=WEIGHTS, k=length))


def sample_uniform(rng: random.Random, length: int) -> str:
    return "".join(rng.choices(LETTERS, k=length))
