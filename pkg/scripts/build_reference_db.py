#!/usr/bin/env python3
"""Generate the bundled reference food database CSV.

The file mirrors the shape of a USDA FNDDS/WWEIA release: 8,691 foods in
155 categories, a long-tailed foods-per-category distribution (19
categories under ten foods), and category names whose shared-word synonym
partition collapses to 98 groups under the default stopwords.

Foods are synthetic but structurally honest. Invariants enforced here:
  - every description's second phrase has at most as many tokens as its
    first, so the phrase-1-vs-2 brand heuristic always keeps phrase 1 and
    descriptions round-trip exactly through Method 2;
  - no two foods share a proportional token multiset, so averaged
    embeddings of distinct foods never tie at cosine 1;
  - the walkthrough entry "Panera Bread, salad, cobb, green goddess, with
    chicken & dressing" preprocesses to its expected per-method token
    lists, with "panera"/"goddess" absent from the vocabulary;
  - every curated generic word lands in the top 250 tokens by frequency.

Run from the repository root after an editable install:
    python3 scripts/build_reference_db.py
"""

from __future__ import annotations

import csv
import math
import random
import sys
from collections import Counter
from pathlib import Path

from foodpref import textprep
from foodpref.defaults import generic_curation
from foodpref.ingest import load_fndds
from foodpref.metrics import DEFAULT_SYNONYM_STOPWORDS, build_synonym_groups
from foodpref.textprep import derive_generic_words, preprocess, tokenize

SEED = 20240817
TOTAL_FOODS = 8691
OUT = Path(__file__).resolve().parents[1] / "src" / "foodpref" / "data" / "reference_foods.csv"

BANNED_TOKENS = {"panera", "goddess"}

# (wweia id, category name, size): int sizes are exact (the 19 small
# categories); letters map through SIZE_CLASSES; "F" splits the leftover
# budget evenly.
CATEGORIES = [
    (1002, "Milk, whole", "M"),
    (1004, "Milk, reduced fat", "F"),
    (1006, "Milk, lowfat", "F"),
    (1008, "Milk, nonfat", "F"),
    (1202, "Flavored milk", "F"),
    (1404, "Milk shakes and other dairy drinks", "F"),
    (1406, "Milk substitutes", 7),
    (9802, "Human milk", 3),
    (2202, "Chicken, whole pieces", "A"),
    (2204, "Chicken patties, nuggets, and tenders", "ML"),
    (1602, "Cheese", "M"),
    (1604, "Cottage and ricotta cheese", "F"),
    (1820, "Yogurt, regular", "M"),
    (1822, "Yogurt, Greek", "M"),
    (2002, "Beef, excludes ground", "L"),
    (2004, "Ground beef", "M"),
    (2006, "Pork", "ML"),
    (2008, "Ham", "F"),
    (2010, "Liver and organ meats", 4),
    (2052, "Cold cuts and cured meats", "M"),
    (2054, "Frankfurters", "F"),
    (2056, "Sausages", "M"),
    (2058, "Bacon", "F"),
    (2060, "Turkey, duck, other poultry", "M"),
    (2062, "Prosciutto", "F"),
    (2064, "Jerky", 5),
    (2402, "Fish", "L"),
    (2404, "Shellfish", "M"),
    (2502, "Eggs and omelets", "M"),
    (2602, "Nuts and seeds", "M"),
    (2604, "Peanut butter and nut spreads", "F"),
    (2606, "Processed soy products", 6),
    (2608, "Beans, peas, legumes", "M"),
    (2610, "Hummus", "F"),
    (2802, "Meat mixed dishes", "X"),
    (2804, "Poultry mixed dishes", "A"),
    (2806, "Seafood mixed dishes", "ML"),
    (3702, "Vegetable mixed dishes", "Y"),
    (4202, "Rice mixed dishes", "ML"),
    (4204, "Pasta mixed dishes", "B"),
    (9006, "Soups", "ML"),
    (3202, "Pizza", "L"),
    (3402, "Burgers", "M"),
    (3404, "Frankfurter sandwiches", "F"),
    (3406, "Chicken fillet sandwiches", "F"),
    (3408, "Egg and breakfast sandwiches", "F"),
    (3410, "Deli and submarine sandwiches", "F"),
    (3602, "Tacos and burritos", "M"),
    (3604, "Nachos", "F"),
    (3606, "Quesadillas", 8),
    (3608, "Dumplings and sushi", "F"),
    (3610, "Enchiladas", "F"),
    (4002, "Rice", "M"),
    (4004, "Pasta, noodles, cooked grains", "M"),
    (4402, "Yeast breads", "ML"),
    (4404, "Biscuits, muffins, quick breads", "M"),
    (4406, "Rolls and buns", "M"),
    (4408, "Tortillas", "F"),
    (4410, "Bagels and English muffins", "F"),
    (4602, "Cakes and pies", "ML"),
    (4604, "Cookies and brownies", "L"),
    (4606, "Doughnuts and pastries", "F"),
    (4608, "Crackers", "F"),
    (4610, "Cereal bars", "F"),
    (4802, "Ready-to-eat cereal", "ML"),
    (4804, "Oatmeal", "F"),
    (4806, "Grits and porridge", 9),
    (4808, "Nutrition bars", 4),
    (4812, "Granola", "F"),
    (5002, "Pancakes, waffles, French toast", "M"),
    (6002, "Apples", "F"),
    (6004, "Bananas", "F"),
    (6006, "Grapes", "F"),
    (6008, "Peaches and nectarines", "F"),
    (6010, "Berries", "F"),
    (6012, "Citrus fruits", "F"),
    (6014, "Melons", "F"),
    (6016, "Dried fruits", 7),
    (6018, "Other fruits and mixtures", "M"),
    (6020, "Fruit juice", "M"),
    (6022, "Fruit punch and lemonade", "F"),
    (6024, "Avocado and guacamole", "F"),
    (6026, "Apple cider", "F"),
    (6402, "Tomatoes", "F"),
    (6404, "Carrots", "F"),
    (6406, "Broccoli", "F"),
    (6408, "Spinach", 8),
    (6410, "Lettuce and lettuce salads", "M"),
    (6412, "String beans", "F"),
    (6414, "Onions", 6),
    (6416, "Corn", "F"),
    (6418, "Other vegetables and combinations", "M"),
    (6420, "Fried vegetables", "F"),
    (6422, "Cabbage and coleslaw", 9),
    (6424, "Peppers", 5),
    (6426, "Mushrooms", 6),
    (6428, "Summer squash", 7),
    (6430, "Winter squash", 8),
    (6432, "White potatoes, baked or boiled", "ML"),
    (6434, "Sweet potatoes", "F"),
    (6436, "Fries and hash browns", "M"),
    (6438, "Salsa", "F"),
    (6440, "Asparagus", "F"),
    (6442, "Cauliflower", "F"),
    (6444, "Celery", "F"),
    (6446, "Cucumbers", "F"),
    (6448, "Beets", "F"),
    (7102, "Salad dressings and vegetable oils", "M"),
    (7202, "Butter and animal fats", "F"),
    (7204, "Margarine", 6),
    (7206, "Cream cheese, sour cream, whipped cream", "F"),
    (7208, "Mayonnaise", 7),
    (7210, "Ketchup and mustard", "F"),
    (7212, "Gravies", "F"),
    (7214, "Soy-based condiments", 3),
    (7216, "Olives and pickles", "F"),
    (8002, "Ice cream and frozen desserts", "L"),
    (8004, "Pudding and gelatin", "F"),
    (8006, "Candy containing chocolate", "M"),
    (8008, "Candy not containing chocolate", "M"),
    (8010, "Jams, syrups, toppings", "F"),
    (8012, "Sugars and honey", "F"),
    (8014, "Low-calorie sweeteners", "F"),
    (8016, "Frozen novelties", "F"),
    (7002, "Soda", "ML"),
    (7004, "Diet soda", "F"),
    (7006, "Coffee", "L"),
    (7008, "Tea", "ML"),
    (7010, "Beer", "F"),
    (7012, "Wine", "F"),
    (7014, "Liquor and cocktails", "F"),
    (7016, "Sport and energy beverages", "F"),
    (7018, "Enhanced water", "F"),
    (7020, "Tap water", "F"),
    (7022, "Bottled water", "F"),
    (7024, "Smoothies", "F"),
    (7026, "Hot chocolate", "F"),
    (8402, "Potato chips", "M"),
    (8404, "Tortilla chips", "F"),
    (8406, "Popcorn", "F"),
    (8408, "Pretzels and snack mix", "F"),
    (8410, "Trail mix", "F"),
    (9002, "Packaged meals", "ML"),
    (9004, "Protein and meal supplements", "F"),
    (9008, "Dips and spreads", "F"),
    (9102, "Baby food: cereals", "F"),
    (9104, "Baby food: dinners", "F"),
    (9106, "Baby food: purees", "F"),
    (9108, "Baby food: snacks and sweets", "F"),
    (9110, "Baby food: wafers", "F"),
    (9112, "Baby food: other", "F"),
    (9114, "Baby juices", "F"),
    (9202, "Formula, ready-to-feed", "F"),
    (9204, "Formula, powder", "F"),
    (9206, "Formula, concentrate", "F"),
]

SIZE_CLASSES = {"X": 480, "Y": 430, "A": 320, "B": 300, "L": 180, "ML": 110, "M": 70}

# Modifier pools shared by every category, grouped by token count. A
# description's first modifier phrase must not out-token the head phrase;
# later modifiers are unconstrained (the brand heuristic only compares
# phrases 1 and 2).
GLOBAL_MODS_1 = [
    "fresh", "raw", "cooked", "plain", "frozen", "canned", "homemade",
    "grilled", "baked", "roasted", "boiled", "steamed", "fried", "salted",
    "unsalted", "sweetened", "unsweetened", "organic", "instant", "spicy",
    "mild", "seasoned", "diced", "sliced", "shredded", "chunky", "smooth",
    "light", "dark", "small", "large", "reduced", "premium", "original",
    "classic", "traditional", "natural", "whole", "marinated", "smoked",
]
GLOBAL_MODS_2 = [
    "with cheese", "with sauce", "with onions", "with herbs", "with spices",
    "with salt", "from mix", "from frozen", "from concentrate",
    "from scratch", "restaurant style", "country style", "italian style",
    "greek style", "southern style", "family style", "with butter",
    "with gravy", "no sugar", "extra crispy", "thin sliced",
    "reduced sodium", "reduced fat", "whole grain", "low sodium",
]
GLOBAL_MODS_3 = [
    "baked or fried", "sweet and sour", "grilled or roasted",
    "with salt added", "salt and pepper", "home or restaurant",
    "with cheese sauce", "with tomato sauce", "fresh or frozen",
    "with herbs and spices",
]

# Category recipes: (head phrases, extra modifier phrases). Heads carry
# the category's identity tokens; global pools supply the long tail.
RECIPES = {
    "Milk, whole": (("milk", "whole milk", "creamline milk"),
                    ("whole", "pasteurized", "homogenized", "vitamin added", "grass fed")),
    "Milk, reduced fat": (("milk", "reduced fat milk"), ("pasteurized", "vitamin added")),
    "Milk, lowfat": (("milk lowfat", "lowfat milk"), ("pasteurized", "vitamin added")),
    "Milk, nonfat": (("nonfat milk", "skim milk"), ("pasteurized", "dry reconstituted")),
    "Flavored milk": (("chocolate milk", "strawberry milk", "vanilla milk shake base"),
                      ("lowfat", "whole", "bottled")),
    "Milk shakes and other dairy drinks": (
        ("milk shake", "dairy drink", "malted milk", "eggnog"),
        ("chocolate", "vanilla", "strawberry", "thick")),
    "Milk substitutes": (("almond milk", "soy milk", "oat milk", "rice milk beverage"),
                         ("unsweetened", "vanilla", "barista blend")),
    "Human milk": (("human milk", "breast milk", "donor human milk"), ("expressed",)),
    "Chicken, whole pieces": (
        ("chicken", "chicken breast", "chicken thigh", "chicken drumstick",
         "chicken wing", "chicken leg quarter", "rotisserie chicken",
         "chicken half breast", "stewing chicken"),
        ("skinless", "skin eaten", "bone in", "boneless", "dark meat",
         "broiler", "rotisserie", "battered", "breaded")),
    "Chicken patties, nuggets, and tenders": (
        ("chicken nuggets", "chicken patty", "chicken tenders",
         "chicken strips", "popcorn chicken"),
        ("breaded", "battered", "white meat", "dinosaur shaped")),
    "Cheese": (("cheese", "cheddar cheese", "mozzarella cheese", "swiss cheese",
                "provolone cheese", "american cheese", "parmesan cheese",
                "pepper jack cheese", "gouda cheese"),
               ("block", "stick", "string", "cubed", "grated", "aged")),
    "Cottage and ricotta cheese": (("cottage cheese", "ricotta cheese"),
                                   ("small curd", "large curd", "lowfat", "part skim")),
    "Yogurt, regular": (("yogurt", "vanilla yogurt", "strawberry yogurt"),
                        ("whole milk", "lowfat", "nonfat", "fruit on bottom", "drinkable")),
    "Yogurt, Greek": (("greek yogurt", "greek vanilla yogurt"),
                      ("whole milk", "lowfat", "nonfat", "strained", "honey flavored")),
    "Beef, excludes ground": (
        ("beef", "beef steak", "beef roast", "beef brisket", "beef short ribs",
         "beef tenderloin", "corned beef", "beef stew meat", "beef round steak"),
        ("lean only", "lean am fat", "braised", "broiled", "pot roasted")),
    "Ground beef": (("ground beef", "ground beef patty", "ground beef crumbles"),
                    ("lean", "extra lean", "pan browned")),
    "Pork": (("pork", "pork chop", "pork loin", "pork ribs", "pork shoulder",
              "pulled pork", "pork tenderloin"),
             ("lean only", "braised", "barbecued", "center cut")),
    "Ham": (("ham", "ham slice", "ham steak"), ("cured", "honey glazed", "spiral cut")),
    "Liver and organ meats": (("beef liver", "chicken liver", "liver pate"),
                              ("braised", "pan fried")),
    "Cold cuts and cured meats": (
        ("cold cuts", "salami", "bologna", "pastrami", "pepperoni slices",
         "corned beef slices", "turkey breast slices"),
        ("deli sliced", "cured", "hard", "reduced sodium")),
    "Frankfurters": (("frankfurter", "beef frankfurter", "corn dog"),
                     ("bun length", "skinless", "jumbo")),
    "Sausages": (("sausage", "pork sausage", "italian sausage", "breakfast sausage",
                  "bratwurst", "chorizo", "kielbasa"),
                 ("link", "patty", "crumbled", "pan browned")),
    "Bacon": (("bacon", "turkey bacon"), ("crisp", "center cut", "thick cut")),
    "Turkey, duck, other poultry": (
        ("turkey", "turkey breast", "ground turkey", "duck", "cornish hen",
         "goose", "quail"),
        ("skinless", "skin eaten", "dark meat", "roast")),
    "Prosciutto": (("prosciutto", "prosciutto slices"), ("dry cured", "thin cut")),
    "Jerky": (("beef jerky", "turkey jerky", "jerky strips"), ("peppered", "teriyaki")),
    "Fish": (("fish", "salmon", "tuna", "cod", "tilapia", "halibut", "trout",
              "catfish", "flounder", "sardines", "fish fillet", "fish sticks"),
             ("breaded", "battered", "poached", "in water", "in oil", "wild caught")),
    "Shellfish": (("shrimp", "crab", "lobster", "scallops", "clams", "oysters",
                   "mussels", "crawfish"),
                  ("breaded", "battered", "in shell", "peeled")),
    "Eggs and omelets": (("egg", "eggs", "omelet", "scrambled eggs", "egg whites",
                          "bacon & eggs", "deviled eggs"),
                         ("hard boiled", "poached", "over easy", "with ham",
                          "with vegetables")),
    "Nuts and seeds": (("almonds", "peanuts", "walnuts", "cashews", "pecans",
                        "pistachios", "sunflower seeds", "pumpkin seeds",
                        "mixed nuts"),
                       ("dry roasted", "oil roasted", "honey roasted", "in shell")),
    "Peanut butter and nut spreads": (
        ("peanut butter", "almond butter", "cashew butter", "nut butter blend"),
        ("creamy", "crunchy", "no stir", "honey")),
    "Processed soy products": (("tofu", "tempeh", "soy crumbles"),
                               ("firm", "silken", "seasoned")),
    "Beans, peas, legumes": (
        ("beans", "black beans", "pinto beans", "kidney beans", "refried beans",
         "chickpeas", "lentils", "split peas", "baked beans", "rice & beans",
         "beans and franks"),
        ("stewed", "in sauce", "seasoned", "no salt")),
    "Hummus": (("hummus", "roasted garlic hummus"), ("with pine nuts", "red pepper")),
    "Meat mixed dishes": (
        ("beef stew", "meatloaf", "beef and broccoli", "chili con carne",
         "beef stroganoff", "swedish meatballs", "shepherds pie",
         "beef pot pie", "corned beef hash", "beef goulash", "sloppy joe filling",
         "macaroni and beef", "pepper steak", "beef curry", "lamb curry"),
        ("with vegetables", "with potatoes", "with rice", "with noodles",
         "with beans", "with gravy", "canned", "homestyle")),
    "Poultry mixed dishes": (
        ("chicken stew", "chicken and dumplings", "chicken pot pie",
         "chicken curry", "sweet & sour chicken", "chicken stir fry",
         "orange chicken", "chicken alfredo", "turkey tetrazzini",
         "chicken fried rice", "chicken teriyaki", "chicken parmigiana"),
        ("with vegetables", "with rice", "with noodles", "white meat",
         "breaded", "homestyle")),
    "Seafood mixed dishes": (
        ("shrimp stir fry", "tuna casserole", "crab cakes", "seafood paella",
         "shrimp scampi", "fish stew", "clam cakes", "salmon patties"),
        ("with rice", "with pasta", "with vegetables", "breaded")),
    "Vegetable mixed dishes": (
        ("vegetable stir fry", "vegetable casserole", "stuffed peppers vegetarian",
         "vegetable curry", "ratatouille", "vegetable lo mein",
         "vegetable fried rice", "succotash", "vegetable pot pie",
         "green bean casserole", "eggplant parmigiana", "vegetable lasagna",
         "stuffed grape leaves", "vegetable chow mein"),
        ("with tofu", "with rice", "with noodles", "with cheese topping",
         "in sauce", "homestyle")),
    "Rice mixed dishes": (
        ("fried rice", "rice pilaf", "spanish rice", "rice and gravy",
         "dirty rice", "rice casserole", "jambalaya", "risotto"),
        ("with vegetables", "with egg", "with chicken", "with pork", "with shrimp")),
    "Pasta mixed dishes": (
        ("macaroni & cheese", "spaghetti & meatballs", "lasagna", "pasta salad",
         "macaroni and cheese bites", "spaghetti with sauce", "ravioli",
         "fettuccine alfredo", "pasta primavera", "baked ziti", "tortellini",
         "pad thai", "lo mein", "pasta with meat sauce"),
        ("with vegetables", "with chicken", "with beef", "whole wheat",
         "canned", "homestyle")),
    "Soups": (("soup", "chicken noodle soup", "tomato soup", "vegetable soup",
               "minestrone soup", "clam chowder", "broccoli cheese soup",
               "lentil soup", "beef barley soup", "miso soup", "chicken broth"),
              ("condensed", "ready to serve", "reduced sodium", "creamy", "chunky")),
    "Pizza": (("pizza", "cheese pizza", "pepperoni pizza", "sausage pizza",
               "vegetable pizza", "supreme pizza", "margherita pizza",
               "hawaiian pizza", "white pizza", "meat lovers pizza"),
              ("thin crust", "thick crust", "stuffed crust", "from school lunch",
               "from restaurant")),
    "Burgers": (("hamburger", "cheeseburger", "double cheeseburger",
                 "bacon cheeseburger", "turkey burger", "veggie burger"),
                ("on bun", "on wheat bun", "with lettuce and tomato",
                 "with condiments", "quarter pound")),
    "Frankfurter sandwiches": (("hot dog on bun", "corn dog on stick", "chili dog on bun"),
                               ("with ketchup", "with mustard", "with relish")),
    "Chicken fillet sandwiches": (
        ("chicken fillet sandwich", "chicken sandwich", "crispy chicken sandwich"),
        ("with mayonnaise", "with lettuce", "grilled", "spicy")),
    "Egg and breakfast sandwiches": (
        ("egg sandwich", "breakfast sandwich", "egg and cheese biscuit sandwich"),
        ("with bacon", "with sausage", "with ham", "on croissant", "on muffin")),
    "Deli and submarine sandwiches": (
        ("submarine sandwich", "turkey sandwich", "ham & cheese sandwich",
         "roast beef sandwich", "club sandwich", "blt sandwich",
         "tuna salad sandwich", "grilled cheese sandwich"),
        ("on wheat bread", "on white bread", "on roll", "toasted",
         "with lettuce and tomato")),
    "Tacos and burritos": (("taco", "burrito", "soft taco", "taco salad bowl",
                            "breakfast burrito", "bean burrito", "fish taco"),
                           ("with beef", "with chicken", "with beans",
                            "with cheese and salsa", "supreme")),
    "Nachos": (("nachos", "nachos supreme"), ("with cheese and beans", "with beef",
                                              "with jalapenos")),
    "Quesadillas": (("quesadilla", "cheese quesadilla", "chicken quesadilla"),
                    ("with salsa", "with peppers")),
    "Dumplings and sushi": (("dumplings", "potstickers", "sushi roll",
                             "california roll", "spring roll", "egg roll wrapper bites"),
                            ("steamed", "pan fried", "with soy dipping sauce",
                             "vegetable filled", "pork filled")),
    "Enchiladas": (("enchilada", "cheese enchilada", "chicken enchilada"),
                   ("with red sauce", "with green sauce")),
    "Rice": (("rice", "white rice", "brown rice", "jasmine rice", "basmati rice",
              "wild rice", "sticky rice"),
             ("long grain", "short grain", "parboiled", "with butter added")),
    "Pasta, noodles, cooked grains": (
        ("pasta", "spaghetti noodles", "egg noodles", "macaroni", "penne pasta",
         "ramen noodles", "couscous", "quinoa", "barley", "bulgur"),
        ("whole wheat", "al dente", "buttered", "with oil")),
    "Yeast breads": (("bread", "white bread", "wheat bread", "whole wheat bread",
                      "multigrain bread", "rye bread", "sourdough bread",
                      "french bread", "italian bread", "pita bread",
                      "naan bread", "challah bread"),
                     ("slice", "toasted", "reduced calorie", "with crust",
                      "bakery", "enriched")),
    "Biscuits, muffins, quick breads": (
        ("biscuit", "blueberry muffin", "bran muffin", "corn muffin",
         "banana bread loaf", "zucchini bread loaf", "cornbread",
         "biscuits and gravy"),
        ("buttermilk", "from refrigerated dough", "mini", "jumbo")),
    "Rolls and buns": (("dinner roll", "hamburger bun", "hot dog bun", "kaiser roll",
                        "croissant", "pretzel roll", "brioche bun"),
                       ("wheat", "white", "toasted", "buttered")),
    "Tortillas": (("tortillas", "flour tortillas", "corn tortillas"),
                  ("soft", "taco size", "burrito size")),
    "Bagels and English muffins": (("bagel", "english muffin", "everything bagel",
                                    "bagel and cream cheese"),
                                   ("toasted", "wheat", "cinnamon raisin", "mini")),
    "Cakes and pies": (("cake", "chocolate cake", "birthday cake", "cheesecake",
                        "apple pie", "pumpkin pie", "pecan pie", "carrot cake",
                        "pound cake", "cupcake", "coffee cake"),
                       ("with icing", "with frosting", "layered", "slice",
                        "bakery", "snack size")),
    "Cookies and brownies": (
        ("cookie", "chocolate chip cookie", "oatmeal cookie", "sugar cookie",
         "peanut butter cookie", "sandwich cookie", "brownie", "blondie",
         "gingersnap cookie", "shortbread cookie", "cookies and cream bites"),
        ("soft baked", "chewy", "iced", "bakery", "bite size", "reduced fat")),
    "Doughnuts and pastries": (("doughnut", "glazed doughnut", "danish pastry",
                                "cinnamon roll pastry", "eclair", "turnover",
                                "toaster pastry", "churro"),
                               ("cream filled", "jelly filled", "frosted", "mini")),
    "Crackers": (("crackers", "saltine crackers", "cheese crackers",
                  "graham crackers", "wheat crackers", "rice crackers"),
                 ("low salt", "whole wheat", "round", "square")),
    "Cereal bars": (("cereal bar", "granola bar cereal style"),
                    ("chocolate chip", "oats and honey", "fruit filled",
                     "chewy", "crunchy")),
    "Ready-to-eat cereal": (
        ("cereal", "corn flakes cereal", "crisped rice cereal",
         "toasted oat cereal", "bran flakes cereal", "granola cereal",
         "shredded wheat cereal", "puffed wheat cereal", "fruit rings cereal"),
        ("fortified", "with raisins", "honey flavored", "frosted", "multigrain")),
    "Oatmeal": (("oatmeal", "steel cut oatmeal", "overnight oats"),
                ("maple flavored", "with brown sugar", "quick", "old fashioned")),
    "Grits and porridge": (("grits", "corn grits", "porridge", "cream of wheat porridge"),
                           ("buttered",)),
    "Nutrition bars": (("nutrition bar", "protein nutrition bar"),
                       ("chocolate", "peanut crunch")),
    "Granola": (("granola", "granola clusters"), ("with almonds", "maple", "vanilla")),
    "Pancakes, waffles, French toast": (
        ("pancakes", "waffles", "french toast", "buttermilk pancakes",
         "belgian waffles", "french toast sticks", "silver dollar pancakes"),
        ("with syrup", "with fruit topping", "buttered", "whole wheat")),
    "Apples": (("apples", "apple slices", "applesauce"),
               ("gala", "fuji", "granny smith", "with skin", "peeled", "cinnamon")),
    "Bananas": (("bananas", "banana", "banana slices"), ("ripe", "green tipped")),
    "Grapes": (("grapes", "grape clusters"), ("red", "green", "seedless", "concord")),
    "Peaches and nectarines": (("peaches", "nectarines", "peach halves"),
                               ("in juice", "in syrup", "ripe")),
    "Berries": (("berries", "strawberries", "blueberries", "raspberries",
                 "blackberries", "mixed berries"),
                ("ripe", "in syrup", "unsweetened")),
    "Citrus fruits": (("oranges", "grapefruit", "tangerines", "clementines",
                       "orange segments"),
                      ("peeled", "in juice", "seedless")),
    "Melons": (("watermelon", "cantaloupe", "honeydew melon", "melon balls"),
               ("cubed", "ripe")),
    "Dried fruits": (("raisins", "dried cranberries", "dried apricots", "prunes"),
                     ("sweetened",)),
    "Other fruits and mixtures": (
        ("fruit cocktail", "fruit salad", "mixed fruit", "mango", "pineapple",
         "kiwi", "pears", "plums", "cherries", "fruit and nut mix",
         "tropical fruit mix"),
        ("in juice", "in light syrup", "in heavy syrup", "cubed", "ripe")),
    "Fruit juice": (("fruit juice", "orange juice", "apple juice", "grape juice",
                     "cranberry juice", "pineapple juice", "juice blend"),
                    ("100 percent", "with pulp", "no pulp", "with calcium",
                     "with added vitamin c")),
    "Fruit punch and lemonade": (("fruit punch", "lemonade", "limeade",
                                  "fruit flavored ade"),
                                 ("pink", "sparkling",
                                  "low calorie")),
    "Avocado and guacamole": (("avocado", "guacamole", "avocado slices"),
                              ("ripe", "chunky")),
    "Apple cider": (("apple cider", "spiced apple cider"), ("hot", "mulled")),
    "Tomatoes": (("tomatoes", "cherry tomatoes", "grape tomatoes", "tomato slices",
                  "sun dried tomatoes"),
                 ("ripe", "vine ripened", "stewed", "crushed", "in juice")),
    "Carrots": (("carrots", "baby carrots", "carrot sticks"),
                ("glazed", "with ranch dip")),
    "Broccoli": (("broccoli", "broccoli florets", "broccoli spears"),
                 ("with cheese sauce", "seasoned")),
    "Spinach": (("spinach", "spinach leaves", "creamed spinach"), ("chopped",)),
    "Lettuce and lettuce salads": (
        ("lettuce", "green salad", "garden salad", "caesar salad",
         "romaine lettuce", "iceberg lettuce", "spring salad mix",
         "side salad", "chef salad", "salad greens blend"),
        ("with dressing", "no dressing", "with tomatoes", "with croutons",
         "with cheese and egg")),
    "String beans": (("string beans", "green beans", "wax beans"),
                     ("french cut", "with almonds", "seasoned")),
    "Onions": (("onions", "red onions", "onion slices"), ("caramelized", "pearl")),
    "Corn": (("corn", "corn on the cob", "sweet corn kernels", "creamed corn"),
             ("yellow", "white", "buttered", "fire roasted")),
    "Other vegetables and combinations": (
        ("mixed vegetables", "vegetable medley", "peas and carrots",
         "stir fry vegetable blend", "california vegetable blend",
         "artichoke hearts", "brussels sprouts", "eggplant", "okra",
         "zucchini"),
        ("seasoned", "buttered", "in cheese sauce", "herb roasted")),
    "Fried vegetables": (("fried vegetables", "onion rings", "fried okra",
                          "fried zucchini sticks", "tempura vegetables"),
                         ("battered", "breaded", "beer battered")),
    "Cabbage and coleslaw": (("cabbage", "coleslaw", "red cabbage", "sauerkraut"),
                             ("creamy", "vinegar based")),
    "Peppers": (("peppers", "bell peppers", "green peppers"), ("red", "roasted")),
    "Mushrooms": (("mushrooms", "portabella mushrooms", "button mushrooms"),
                  ("sauteed", "stuffed")),
    "Summer squash": (("summer squash", "yellow squash", "zucchini squash"),
                      ("sauteed", "grilled slices")),
    "Winter squash": (("winter squash", "butternut squash", "acorn squash",
                       "spaghetti squash"),
                      ("mashed", "cubed")),
    "White potatoes, baked or boiled": (
        ("potatoes", "baked potato", "boiled potatoes", "mashed potatoes",
         "potato salad", "scalloped potatoes", "roasted red potatoes",
         "twice baked potato"),
        ("with skin", "peeled", "with sour cream", "with cheese and bacon",
         "buttered", "from flakes")),
    "Sweet potatoes": (("sweet potatoes", "sweet potato casserole", "candied yams"),
                       ("mashed", "with marshmallows", "cubed")),
    "Fries and hash browns": (("french fries", "hash browns", "tater tots",
                               "curly fries", "steak fries", "waffle fries",
                               "potato wedges", "home fries"),
                              ("crinkle cut", "shoestring", "seasoned",
                               "from fast food", "oven heated")),
    "Salsa": (("salsa", "pico de gallo", "salsa verde"), ("hot", "medium", "restaurant")),
    "Asparagus": (("asparagus", "asparagus spears"), ("with hollandaise", "trimmed")),
    "Cauliflower": (("cauliflower", "cauliflower florets", "riced cauliflower"),
                    ("with cheese sauce",)),
    "Celery": (("celery", "celery sticks"), ("with peanut butter filling",)),
    "Cucumbers": (("cucumbers", "cucumber slices"), ("with vinegar", "peeled")),
    "Beets": (("beets", "pickled beets", "beet slices"), ("harvard style",)),
    "Salad dressings and vegetable oils": (
        ("salad dressing", "ranch dressing", "italian dressing",
         "caesar dressing", "french dressing", "thousand island dressing",
         "blue cheese dressing", "vinaigrette dressing", "olive oil",
         "vegetable oil", "canola oil"),
        ("fat free", "lite", "creamy", "zesty", "extra virgin")),
    "Butter and animal fats": (("butter", "whipped butter", "ghee", "lard"),
                               ("stick", "tub", "clarified")),
    "Margarine": (("margarine", "margarine spread"), ("tub", "stick")),
    "Cream cheese, sour cream, whipped cream": (
        ("cream cheese", "sour cream", "whipped cream", "whipped topping",
         "half and half cream"),
        ("strawberry", "chive and onion", "fat free", "aerosol")),
    "Mayonnaise": (("mayonnaise", "mayonnaise dressing"), ("olive oil based", "lite")),
    "Ketchup and mustard": (("ketchup", "mustard", "honey mustard",
                             "dijon mustard", "yellow mustard"),
                            ("no salt added", "spicy brown")),
    "Gravies": (("gravy", "brown gravy", "turkey gravy", "sausage gravy",
                 "country gravy"),
                ("from jar", "from packet")),
    "Soy-based condiments": (("soy sauce", "teriyaki sauce", "hoisin sauce"),
                             ("reduced sodium",)),
    "Olives and pickles": (("olives", "pickles", "dill pickles", "green olives",
                            "kalamata olives", "pickle spears"),
                           ("stuffed", "spicy", "bread and butter style")),
    "Ice cream and frozen desserts": (
        ("ice cream", "vanilla ice cream", "chocolate ice cream",
         "strawberry ice cream", "ice cream sundae", "ice cream sandwich",
         "ice cream cone", "soft serve ice cream", "sherbet", "sorbet",
         "frozen yogurt", "gelato"),
        ("with hot fudge", "with sprinkles", "no sugar added", "premium brand",
         "light churned")),
    "Pudding and gelatin": (("pudding", "chocolate pudding", "vanilla pudding",
                             "rice pudding", "gelatin dessert cup", "tapioca pudding",
                             "flan"),
                            ("snack cup", "sugar free", "ready to eat")),
    "Candy containing chocolate": (
        ("chocolate candy", "chocolate bar", "milk chocolate pieces",
         "chocolate covered peanuts", "chocolate truffles", "fudge",
         "chocolate covered raisins", "peanut butter cups"),
        ("dark", "milk", "with almonds", "fun size", "king size")),
    "Candy not containing chocolate": (
        ("candy", "gummy candy", "hard candy", "licorice", "caramels",
         "jelly beans", "sour candy strips", "taffy", "marshmallows",
         "peppermints"),
        ("fruit flavored", "sugar free", "assorted")),
    "Jams, syrups, toppings": (("jam", "jelly", "strawberry jam", "grape jelly",
                                "maple syrup", "pancake syrup", "honey spread",
                                "caramel topping", "marmalade"),
                               ("reduced sugar", "squeeze bottle")),
    "Sugars and honey": (("sugar", "brown sugar", "powdered sugar", "honey",
                          "raw sugar packets"),
                         ("granulated", "cane")),
    "Low-calorie sweeteners": (("sweetener packets", "stevia sweetener",
                                "sucralose sweetener"),
                               ("zero calorie", "baking blend")),
    "Frozen novelties": (("popsicle", "fruit ice pops", "fudge pops",
                          "snow cone", "italian ice"),
                         ("sugar free", "assorted flavors")),
    "Soda": (("soda", "cola soda", "lemon lime soda", "root beer", "ginger ale",
              "orange soda", "grape soda", "cream soda"),
             ("bottled", "fountain", "caffeine free")),
    "Diet soda": (("diet soda", "diet cola soda", "zero sugar soda"),
                  ("caffeine free", "cherry flavored")),
    "Coffee": (("coffee", "brewed coffee", "espresso", "latte", "cappuccino",
                "iced coffee", "cold brew coffee", "mocha", "macchiato",
                "decaf coffee", "coffee with cream and sugar"),
               ("black", "with milk", "with cream", "with sugar",
                "with flavored syrup", "decaffeinated")),
    "Tea": (("tea", "green tea", "black tea", "iced tea", "herbal tea",
             "chai tea", "sweet tea", "matcha tea"),
            ("brewed", "bottled", "with lemon", "with honey", "decaffeinated")),
    "Beer": (("beer", "light beer", "craft ale", "lager beer", "wheat beer"),
             ("bottled", "draft", "non alcoholic")),
    "Wine": (("wine", "red wine", "white wine", "rose wine", "sparkling wine"),
             ("table", "dry", "dessert")),
    "Liquor and cocktails": (("vodka", "whiskey", "rum", "tequila", "margarita",
                              "martini", "mojito", "bloody mary cocktail"),
                             ("on the rocks", "80 proof", "mixed")),
    "Sport and energy beverages": (("sports beverage", "energy beverage",
                                    "electrolyte beverage"),
                                   ("fruit punch flavored", "citrus flavored",
                                    "zero sugar")),
    "Enhanced water": (("enhanced water", "vitamin water", "electrolyte water"),
                       ("flavored", "zero calorie")),
    "Tap water": (("tap water", "municipal water"), ("filtered", "chilled")),
    "Bottled water": (("bottled water", "spring water", "sparkling water",
                       "mineral water"),
                      ("flavored", "unflavored")),
    "Smoothies": (("smoothie", "fruit smoothie", "berry smoothie",
                   "green smoothie blend"),
                  ("with protein added", "with yogurt base", "meal size")),
    "Hot chocolate": (("hot chocolate", "hot cocoa"), ("with marshmallows",
                                                       "sugar free", "from packet")),
    "Potato chips": (("potato chips", "kettle chips", "potato crisps"),
                     ("barbecue", "sour cream and onion", "salt and vinegar",
                      "ruffled", "ridged", "wavy")),
    "Tortilla chips": (("tortilla chips", "corn chips rounds"),
                       ("nacho flavored", "lime", "scoop shaped")),
    "Popcorn": (("popcorn", "microwave popcorn", "kettle corn"),
                ("air popped", "buttered", "caramel coated", "cheese flavored")),
    "Pretzels and snack mix": (("pretzels", "snack mix", "pretzel twists",
                                "pretzel sticks", "party mix"),
                               ("honey wheat", "sourdough hard", "cheddar flavored")),
    "Trail mix": (("trail mix", "tropical trail mix"),
                  ("with chocolate pieces", "with dried fruit")),
    "Packaged meals": (("frozen dinner", "tv dinner", "instant noodle cup",
                        "macaroni & cheese dinner", "packaged lunch combo",
                        "rice bowl meal", "pasta bowl meal", "pot pie meal",
                        "burrito bowl meal"),
                       ("family size", "single serving", "microwavable",
                        "value brand")),
    "Protein and meal supplements": (("protein shake", "meal supplement drink",
                                      "protein powder scoop",
                                      "weight gain supplement drink"),
                                     ("chocolate", "vanilla", "ready to drink",
                                      "high protein")),
    "Dips and spreads": (("dip", "spinach dip", "french onion dip", "cheese dip",
                          "bean dip", "veggie dip", "tzatziki spread",
                          "olive tapenade spread"),
                         ("creamy", "chunky", "party size")),
    "Baby food: cereals": (("baby cereal", "infant rice cereal",
                            "infant oatmeal cereal", "infant multigrain cereal"),
                           ("dry", "with banana", "stage one", "stage two")),
    "Baby food: dinners": (("baby dinner", "infant turkey dinner",
                            "infant chicken dinner", "infant vegetable beef dinner"),
                           ("stage two", "stage three", "jarred")),
    "Baby food: purees": (("baby puree", "infant apple puree", "infant pear puree",
                           "infant squash puree", "infant carrot puree"),
                          ("stage one", "stage two", "pouch")),
    "Baby food: snacks and sweets": (("baby snack puffs", "infant teething snack",
                                      "baby yogurt melts", "baby fruit snack"),
                                     ("banana flavored", "sweet potato flavored")),
    "Baby food: wafers": (("baby wafer", "infant rice wafer", "teething wafer"),
                          ("vanilla", "blueberry flavored")),
    "Baby food: other": (("baby food mixed pack", "infant meal assortment"),
                         ("stage two", "variety")),
    "Baby juices": (("baby juice", "infant apple juice blend",
                     "infant pear juice blend"),
                    ("diluted", "with vitamin c")),
    "Formula, ready-to-feed": (("infant formula ready to feed",
                                "formula bottle ready to feed"),
                               ("milk based", "soy based", "sensitive")),
    "Formula, powder": (("infant formula powder", "formula powder can"),
                        ("milk based", "soy based", "gentle")),
    "Formula, concentrate": (("infant formula concentrate",
                              "formula liquid concentrate"),
                             ("milk based", "soy based")),
}

# Hand-written foods that guarantee specific vocabulary and category-token
# links; they are inserted before the generated ones.
ANCHORS = {
    "Vegetable mixed dishes": (
        "Cobb salad with green vegetables, chicken, dressing",
    ),
    "Yeast breads": (
        "Bread stuffing or dressing, from mix",
    ),
    "Salad dressings and vegetable oils": (
        "Salad dressing, ranch",
    ),
}

TABLE1_ENTRY = "Panera Bread, salad, cobb, green goddess, with chicken & dressing"
TABLE1_EXPECTED = {
    1: ["bread"],
    2: ["bread", "salad", "cobb", "green", "with", "chicken", "&", "dressing"],
    3: ["salad", "cobb", "green", "with", "chicken", "&", "dressing"],
    4: ["salad", "cobb", "green", "chicken", "dressing"],
    5: ["bread", "salad", "cobb", "green", "chicken", "dressing"],
}
TABLE1_RESTRICTION_NAMES = {
    "Vegetable mixed dishes",
    "Chicken, whole pieces",
    "Chicken patties, nuggets, and tenders",
    "Yeast breads",
    "Salad dressings and vegetable oils",
}


def resolve_sizes() -> dict[int, int]:
    fixed = {}
    flex_ids = []
    for cat_id, _, size in CATEGORIES:
        if isinstance(size, int):
            fixed[cat_id] = size
        elif size == "F":
            flex_ids.append(cat_id)
        else:
            fixed[cat_id] = SIZE_CLASSES[size]
    budget = TOTAL_FOODS - sum(fixed.values())
    per, rem = divmod(budget, len(flex_ids))
    assert per >= 10, f"flex share {per} would create extra small categories"
    sizes = dict(fixed)
    for i, cat_id in enumerate(flex_ids):
        sizes[cat_id] = per + (1 if i < rem else 0)
    assert sum(sizes.values()) == TOTAL_FOODS
    return sizes


def multiset_key(tokens: tuple[str, ...]) -> tuple:
    counts = sorted(Counter(tokens).items())
    g = 0
    for _, c in counts:
        g = math.gcd(g, c)
    return tuple((t, c // g) for t, c in counts)


def phrase_tokens(description: str) -> tuple[tuple[str, ...], ...]:
    return tokenize(description).phrases


def check_description(description: str) -> tuple:
    phrases = phrase_tokens(description)
    assert phrases and phrases[0], f"no leading phrase: {description!r}"
    if len(phrases) > 1:
        assert len(phrases[1]) <= len(phrases[0]), (
            f"second phrase out-tokens the first: {description!r}"
        )
    flat = [t for p in phrases for t in p]
    assert not BANNED_TOKENS & set(flat), f"banned token in {description!r}"
    return multiset_key(tuple(flat))


def generate_category(
    rng: random.Random,
    name: str,
    n: int,
    used_keys: set,
) -> list[str]:
    heads, own_mods = RECIPES[name]
    descriptions = []
    for anchor in ANCHORS.get(name, ()):
        key = check_description(anchor)
        assert key not in used_keys, f"anchor collides: {anchor!r}"
        used_keys.add(key)
        descriptions.append(anchor)

    pool_1 = list(own_mods) + GLOBAL_MODS_1
    pool_any = list(own_mods) + GLOBAL_MODS_1 + GLOBAL_MODS_2 + GLOBAL_MODS_3
    attempts = 0
    while len(descriptions) < n:
        attempts += 1
        assert attempts < n * 400, f"cannot fill category {name!r} ({n} foods)"
        head = rng.choice(heads)
        head_len = len(head.split())
        first_eligible = [m for m in pool_any if len(m.split()) <= head_len]
        if not first_eligible:
            first_eligible = [m for m in pool_1 if len(m.split()) <= head_len]
        k = rng.choices((0, 1, 2, 3), weights=(12, 38, 32, 18))[0]
        mods: list[str] = []
        if k >= 1:
            mods.append(rng.choice(first_eligible))
        while len(mods) < k:
            extra = rng.choice(pool_any)
            if extra not in mods:
                mods.append(extra)
        description = ", ".join([head[0].upper() + head[1:]] + mods)
        phrases = phrase_tokens(description)
        if len(phrases) > 1 and len(phrases[1]) > len(phrases[0]):
            continue
        flat = tuple(t for p in phrases for t in p)
        key = multiset_key(flat)
        if key in used_keys:
            continue
        used_keys.add(key)
        descriptions.append(description)
    return descriptions


def build_rows() -> list[tuple[int, str, int, str]]:
    rng = random.Random(SEED)
    sizes = resolve_sizes()
    used_keys: set = set()
    rows = []
    for cat_id, name, _ in sorted(CATEGORIES):
        for i, description in enumerate(
            generate_category(rng, name, sizes[cat_id], used_keys), start=1
        ):
            rows.append((cat_id * 10000 + i, description, cat_id, name))
    return rows


def verify(path: Path) -> None:
    full = load_fndds(path, exclusion_terms=())
    db = load_fndds(path)

    by_cat = Counter(f.category_id for f in full.foods)
    n = len(by_cat)
    total = sum(by_cat.values())
    mean = total / n
    std = math.sqrt(sum((c - mean) ** 2 for c in by_cat.values()) / n)
    small = sum(1 for c in by_cat.values() if c < 10)
    assert n == 155, n
    assert total == TOTAL_FOODS, total
    assert small == 19, small
    assert abs(mean - 56.06) < 0.1, mean
    assert abs(std - 69.97) < 5.0, std

    keys = {multiset_key(tokenize(f.description).all_tokens) for f in full.foods}
    assert len(keys) == len(full.foods), "duplicate proportional token multisets"

    need = {"bread", "salad", "cobb", "green", "chicken", "dressing", "with", "&"}
    assert need <= full.vocabulary and need <= db.vocabulary
    assert not BANNED_TOKENS & full.vocabulary

    curation = generic_curation()
    for vocab_db in (full, db):
        generic = derive_generic_words(vocab_db.word_freq, curation)
        missing = {w for w in curation if w not in generic}
        assert not missing, f"curated words outside top 250: {missing}"

    generic = derive_generic_words(db.word_freq, curation)
    entry = tokenize(TABLE1_ENTRY)
    for method, expected in TABLE1_EXPECTED.items():
        got = list(preprocess(entry, method, db, generic).tokens)
        assert Counter(got) == Counter(expected), (method, got)
    result6 = preprocess(entry, 6, db, generic)
    assert Counter(result6.tokens) == Counter(TABLE1_EXPECTED[4])
    assert not result6.fallback_to_all
    restricted_names = {db.categories[c] for c in result6.category_restriction}
    assert TABLE1_RESTRICTION_NAMES <= restricted_names, restricted_names

    groups = build_synonym_groups(full.categories, DEFAULT_SYNONYM_STOPWORDS)
    print(f"synonym groups over {len(full.categories)} categories: {len(groups)}")
    if len(groups) != 98:
        sized = sorted(
            (g for g in groups.groups.values() if len(g) > 1), key=len, reverse=True
        )
        for g in sized:
            print("  merged:", sorted(full.categories[c] for c in g))
    assert len(groups) == 98, len(groups)

    mw = next(c for c, nm in full.categories.items() if nm == "Milk, whole")
    ms = next(
        c for c, nm in full.categories.items()
        if nm == "Milk shakes and other dairy drinks"
    )
    assert groups.same(mw, ms)

    print(f"ok: {total} foods, {n} categories, mean {mean:.2f}, "
          f"std {std:.2f}, {small} categories under ten foods, "
          f"{len(full.vocabulary)} vocabulary tokens, "
          f"{full.excluded_count + len(full.foods) - len(db.foods)} excluded by default")


def main() -> None:
    known = {name for _, name, _ in CATEGORIES}
    assert known == set(RECIPES), (
        known - set(RECIPES), set(RECIPES) - known)
    rows = build_rows()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "food_code", "main_food_description",
            "wweia_category_number", "wweia_category_description",
        ])
        writer.writerows(rows)
    print(f"wrote {len(rows)} foods to {OUT}")
    verify(OUT)


if __name__ == "__main__":
    main()
